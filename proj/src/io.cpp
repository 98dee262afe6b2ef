#include "cgkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgkit {
namespace {

using nlohmann::json;

json coeff_rows(const LaurentPoly& c) {
  json rows = json::array();
  for (const auto& [exps, coeff] : c.terms()) {
    json row = json::array();
    for (int e : exps) row.push_back(e);
    row.push_back(boost::multiprecision::numerator(coeff).str());
    row.push_back(boost::multiprecision::denominator(coeff).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

LaurentPoly coeff_from_rows(const json& rows, const VarListPtr& vars) {
  if (!rows.is_array() || rows.empty())
    throw std::runtime_error("coefficient must be a nonempty array of term rows");
  LaurentPoly out = LaurentPoly::zero(vars);
  const std::size_t nvars = vars->size();
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != nvars + 2)
      throw std::runtime_error("coefficient term row has the wrong length");
    LaurentPoly::Exponents exps;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (!row[v].is_number_integer())
        throw std::runtime_error("coefficient exponent must be an integer");
      exps.push_back(row[v].get<int>());
    }
    if (!row[nvars].is_string() || !row[nvars + 1].is_string())
      throw std::runtime_error("coefficient numerator and denominator must be strings");
    const Rat c = rat_from_string(row[nvars].get<std::string>() + "/" +
                                  row[nvars + 1].get<std::string>());
    out += LaurentPoly::monomial(c, exps, vars);
  }
  return out;
}

json index_array(const MultiIndex& idx) {
  json a = json::array();
  for (int v : idx) a.push_back(v);
  return a;
}

MultiIndex index_from_json(const json& a, int legs, int n) {
  if (!a.is_array() || static_cast<int>(a.size()) != legs)
    throw std::runtime_error("tensor index has the wrong number of legs");
  MultiIndex idx;
  for (const auto& v : a) {
    if (!v.is_number_integer())
      throw std::runtime_error("tensor index component must be an integer");
    const int c = v.get<int>();
    if (c < 1 || c > n) throw std::runtime_error("tensor index component out of range");
    idx.push_back(c);
  }
  return idx;
}

const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error(std::string("missing field: ") + key);
  return *it;
}

int require_int(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_integer())
    throw std::runtime_error(std::string("field must be an integer: ") + key);
  return v.get<int>();
}

std::string require_string(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_string())
    throw std::runtime_error(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

std::vector<int> int_list(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_array())
    throw std::runtime_error(std::string("field must be an array: ") + key);
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw std::runtime_error(std::string("field must hold integers: ") + key);
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

json rmatrix_to_json(const LaurentOperator& r) {
  VarListPtr vars = LaurentPoly::default_vars();
  r.for_each([&](LaurentOperator::Index, LaurentOperator::Index,
                 const LaurentPoly& v) { vars = v.vars_ptr(); });

  json j;
  j["format"] = "cgkit-rmatrix/1";
  j["n"] = r.base_dim();
  j["legs"] = r.legs();
  j["vars"] = *vars;
  json entries = json::array();
  for (const auto& [col, rows] : r.columns())
    for (const auto& [row, value] : rows) {
      json e;
      e["in"] = index_array(unflatten_index(col, r.base_dim(), r.legs()));
      e["out"] = index_array(unflatten_index(row, r.base_dim(), r.legs()));
      e["coeff"] = coeff_rows(value);
      entries.push_back(std::move(e));
    }
  j["entries"] = std::move(entries);
  return j;
}

LaurentOperator rmatrix_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("operator file must be a JSON object");
  if (require_string(j, "format") != "cgkit-rmatrix/1")
    throw std::runtime_error("unrecognized operator format tag");
  const int n = require_int(j, "n");
  const int legs = require_int(j, "legs");
  if (n < 1 || legs < 1) throw std::runtime_error("n and legs must be positive");

  const json& vars_json = require_field(j, "vars");
  if (!vars_json.is_array() || vars_json.empty())
    throw std::runtime_error("vars must be a nonempty array");
  VarList names;
  for (const auto& v : vars_json) {
    if (!v.is_string()) throw std::runtime_error("vars must hold strings");
    names.push_back(v.get<std::string>());
  }
  const VarListPtr vars = LaurentPoly::make_vars(names);

  LaurentOperator r(n, legs);
  const json& entries = require_field(j, "entries");
  if (!entries.is_array()) throw std::runtime_error("entries must be an array");
  for (const auto& e : entries) {
    const MultiIndex in = index_from_json(require_field(e, "in"), legs, n);
    const MultiIndex out = index_from_json(require_field(e, "out"), legs, n);
    r.set_entry(out, in, coeff_from_rows(require_field(e, "coeff"), vars));
  }
  return r;
}

std::string rmatrix_to_text(const LaurentOperator& r) {
  std::ostringstream os;
  os << r.base_dim() << " " << r.legs() << "\n";
  for (const auto& [col, rows] : r.columns())
    for (const auto& [row, value] : rows) {
      for (int v : unflatten_index(row, r.base_dim(), r.legs())) os << v << " ";
      for (int v : unflatten_index(col, r.base_dim(), r.legs())) os << v << " ";
      os << value.str() << "\n";
    }
  return os.str();
}

json bd_input_to_json(const BDInput& in) {
  json j;
  j["format"] = "cgkit-bd/1";
  j["type"] = in.type == ReductiveAlgebra::Type::sl ? "sl" : "gl";
  j["rank"] = in.rank;
  j["B1"] = in.triple.b1;
  j["B2"] = in.triple.b2;
  json tau = json::object();
  for (const auto& [a, b] : in.triple.tau) tau[std::to_string(a)] = b;
  j["tau"] = std::move(tau);
  if (in.f0) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < in.f0->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < in.f0->cols(); ++c)
        row.push_back(rat_to_string((*in.f0)(r, c)));
      rows.push_back(std::move(row));
    }
    j["f0"] = std::move(rows);
  }
  return j;
}

BDInput bd_input_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("input must be a JSON object");
  if (require_string(j, "format") != "cgkit-bd/1")
    throw std::runtime_error("unrecognized input format tag");
  BDInput in;
  const std::string type = require_string(j, "type");
  if (type == "sl")
    in.type = ReductiveAlgebra::Type::sl;
  else if (type == "gl")
    in.type = ReductiveAlgebra::Type::gl;
  else
    throw std::runtime_error("type must be sl or gl");
  in.rank = require_int(j, "rank");
  if (in.rank < 2) throw std::runtime_error("rank must be at least 2");
  in.triple.b1 = int_list(j, "B1");
  in.triple.b2 = int_list(j, "B2");
  const json& tau = require_field(j, "tau");
  if (!tau.is_object()) throw std::runtime_error("tau must be an object");
  for (auto it = tau.begin(); it != tau.end(); ++it) {
    int key;
    try {
      std::size_t used = 0;
      key = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw std::runtime_error("tau keys must be integers");
    }
    if (!it.value().is_number_integer())
      throw std::runtime_error("tau values must be integers");
    in.triple.tau[key] = it.value().get<int>();
  }
  if (auto f0 = j.find("f0"); f0 != j.end()) {
    if (!f0->is_array() || f0->empty())
      throw std::runtime_error("f0 must be a nonempty array of rows");
    const int rows = static_cast<int>(f0->size());
    RatMatrix m(rows, rows);
    for (int r = 0; r < rows; ++r) {
      const json& row = (*f0)[r];
      if (!row.is_array() || static_cast<int>(row.size()) != rows)
        throw std::runtime_error("f0 must be square");
      for (int c = 0; c < rows; ++c) {
        if (!row[c].is_string())
          throw std::runtime_error("f0 entries must be rational strings");
        try {
          m(r, c) = rat_from_string(row[c].get<std::string>());
        } catch (const std::exception&) {
          throw std::runtime_error("f0 entry is not a rational number");
        }
      }
    }
    const int cartan = in.type == ReductiveAlgebra::Type::gl ? in.rank : in.rank - 1;
    if (rows != cartan)
      throw std::runtime_error("f0 size does not match the Cartan dimension");
    in.f0 = std::move(m);
  }
  return in;
}

json presentation_to_json(const QuadraticPresentation& pres) {
  json j;
  j["format"] = "cgkit-presentation/1";
  json alphabet = json::array();
  for (int code = 0; code < pres.alphabet.size(); ++code)
    alphabet.push_back(pres.alphabet.letter_name(code));
  j["alphabet"] = std::move(alphabet);

  VarListPtr vars = LaurentPoly::default_vars();
  for (const auto& rel : pres.relations)
    for (const auto& [word, coeff] : rel.terms()) vars = coeff.vars_ptr();
  j["vars"] = *vars;

  json relations = json::array();
  for (const auto& rel : pres.relations) {
    json terms = json::array();
    for (const auto& [word, coeff] : rel.terms()) {
      json t;
      json w = json::array();
      for (std::uint16_t code : word) w.push_back(pres.alphabet.letter_name(code));
      t["word"] = std::move(w);
      t["coeff"] = coeff_rows(coeff);
      terms.push_back(std::move(t));
    }
    relations.push_back(std::move(terms));
  }
  j["relations"] = std::move(relations);
  return j;
}

json report_to_json(const Report& rep) {
  json j;
  j["format"] = "cgkit-report/1";
  j["tool_version"] = tool_version;
  j["command"] = rep.command;
  json params = json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  j["params"] = std::move(params);

  std::vector<CheckEntry> sorted = rep.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
  json checks = json::array();
  for (const auto& c : sorted) {
    json e;
    e["name"] = c.name;
    switch (c.status) {
      case CheckEntry::Status::pass: e["status"] = "pass"; break;
      case CheckEntry::Status::fail: e["status"] = "fail"; break;
      case CheckEntry::Status::info: e["status"] = "info"; break;
    }
    if (c.witness_location) e["witness_location"] = *c.witness_location;
    if (c.witness_value) e["witness_value"] = *c.witness_value;
    if (!c.note.empty()) e["note"] = c.note;
    e["timing_ms"] = c.timing_ms;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed while writing file: " + path);
}

}  // namespace cgkit
