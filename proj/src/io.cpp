#include "lcpk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcpk {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.empty()) {
    throw InstanceFormatError(std::string(key) + " must be a nonempty array of rows");
  }
  std::vector<Vector> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) {
      throw InstanceFormatError(std::string(key) + " rows must be nonempty arrays");
    }
    Vector r;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw InstanceFormatError(std::string(key) + " entries must be numbers");
      }
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw InstanceFormatError(std::string(key) + " rows have unequal lengths");
    }
  }
  try {
    return Matrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw InstanceFormatError(std::string(key) + ": " + e.what());
  }
}

Vector vector_from_json(const json& j, const char* key) {
  if (!j.is_array()) {
    throw InstanceFormatError(std::string(key) + " must be an array");
  }
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number()) {
      throw InstanceFormatError(std::string(key) + " entries must be numbers");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

// %.17g keeps doubles bit-faithful through a round trip.
std::string format_double(double v) {
  if (v == static_cast<long long>(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.0", static_cast<long long>(v));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of plain numbers stay on one line.
      bool flat = true;
      for (const auto& v : j) {
        if (v.is_structured()) {
          flat = false;
          break;
        }
      }
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          dump_rec(j[i], out, indent, depth + 1);
          if (i + 1 < j.size()) out += ", ";
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

nlohmann::json to_json(const Vector& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

nlohmann::json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const Residuals& r) {
  json j;
  j["min_entry"] = r.min_entry;
  j["comp"] = r.comp;
  j["equation"] = r.equation;
  return j;
}

nlohmann::json to_json(const LcpSolution& s) {
  json j;
  j["z"] = to_json(s.z);
  j["w"] = to_json(s.w);
  j["method"] = s.method;
  j["residuals"] = to_json(s.residuals);
  if (s.dual_y) j["dual_y"] = to_json(*s.dual_y);
  if (s.method == "lp_reduction") j["certified"] = s.certified;
  return j;
}

LcpInstance parse_instance(const std::string& text) {
  json j = json::parse(text);  // parse_error propagates to the caller
  if (!j.is_object() || !j.contains("M") || !j.contains("q")) {
    throw InstanceFormatError("instance must be an object with M and q");
  }

  LcpInstance inst;
  inst.m = matrix_from_json(j["M"], "M");
  if (!inst.m.square()) {
    throw InstanceFormatError("M must be square");
  }
  inst.q = vector_from_json(j["q"], "q");
  if (inst.q.size() != inst.m.rows()) {
    throw InstanceFormatError("q length must equal the dimension of M");
  }

  Orientation orientation = Orientation::kLower;
  if (j.contains("orientation")) {
    const std::string o = j["orientation"].get<std::string>();
    if (o == "lower") {
      orientation = Orientation::kLower;
    } else if (o == "upper") {
      orientation = Orientation::kUpper;
    } else {
      throw InstanceFormatError("orientation must be \"lower\" or \"upper\"");
    }
  }
  if (j.contains("block_size")) {
    if (!j["block_size"].is_number_integer() ||
        j["block_size"].get<long long>() <= 0) {
      throw InstanceFormatError("block_size must be a positive integer");
    }
    const std::size_t bs = j["block_size"].get<std::size_t>();
    if (inst.m.rows() % bs != 0) {
      throw InstanceFormatError("block_size must divide the dimension of M");
    }
    inst.partition = BlockPartition{bs, inst.m.rows() / bs, orientation};
  }
  if (j.contains("X") != j.contains("Y")) {
    throw InstanceFormatError("X and Y must be supplied together");
  }
  if (j.contains("X")) {
    inst.hidden_x = matrix_from_json(j["X"], "X");
    inst.hidden_y = matrix_from_json(j["Y"], "Y");
    if (inst.hidden_x->rows() != inst.m.rows() ||
        !inst.hidden_x->square() ||
        inst.hidden_y->rows() != inst.m.rows() ||
        !inst.hidden_y->square()) {
      throw InstanceFormatError("X and Y must match the dimension of M");
    }
  }
  return inst;
}

LcpInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string write_instance(const LcpInstance& inst) {
  json j;
  j["M"] = to_json(inst.m);
  j["q"] = to_json(inst.q);
  if (inst.partition) {
    j["block_size"] = inst.partition->block_size;
    j["orientation"] = to_string(inst.partition->orientation);
  }
  if (inst.hidden_x) j["X"] = to_json(*inst.hidden_x);
  if (inst.hidden_y) j["Y"] = to_json(*inst.hidden_y);
  return canonical_dump(j);
}

void save_instance(const LcpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file: " + path);
  }
  out << write_instance(inst);
}

}  // namespace lcpk
