#include "qkam/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qkam/errors.hpp"

namespace qkam {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.dim()}, {"data", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
    throw ParseError("matrix: expected object with 'dim' and 'data'");
  if (!j["dim"].is_number_integer()) throw ParseError("matrix: 'dim' must be an integer");
  const int n = j["dim"].get<int>();
  if (n < 1) throw ParseError("matrix: 'dim' must be >= 1");
  const json& data = j["data"];
  if (!data.is_array() || static_cast<int>(data.size()) != n)
    throw ParseError("matrix: 'data' must have dim rows");
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const json& row = data[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("matrix: row " + std::to_string(r) + " is not square");
    for (int c = 0; c < n; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix: entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") must be [re, im]");
      const double re = e[0].get<double>(), im = e[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError("matrix: non-finite entry at (" + std::to_string(r) + "," +
                         std::to_string(c) + ")");
      m(r, c) = cplx(re, im);
    }
  }
  return m;
}

ComplexMatrix parse_matrix_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return matrix_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

json resolution_to_json(const SpectralResolution& res) {
  json eigs = json::array();
  for (const cplx& e : res.eigenvalues) eigs.push_back(json::array({e.real(), e.imag()}));
  json projs = json::array();
  for (const ComplexMatrix& p : res.projections) projs.push_back(matrix_to_json(p));
  return json{{"eigenvalues", std::move(eigs)},
              {"multiplicities", res.multiplicities},
              {"projections", std::move(projs)},
              {"gap", res.gap},
              {"oblique", res.oblique}};
}

json decomposition_to_json(const ObservableDecomposition& dec) {
  return json{{"noncons", matrix_to_json(dec.noncons)},
              {"robust", matrix_to_json(dec.robust)},
              {"fragile", matrix_to_json(dec.fragile)},
              {"residual", dec.residual}};
}

json kam_result_to_json(const KamResult& r) {
  return json{{"epsilon", r.epsilon},
              {"v_zeno", matrix_to_json(r.v_zeno)},
              {"k1", matrix_to_json(r.k1)},
              {"v1", matrix_to_json(r.v1)},
              {"k2", matrix_to_json(r.k2)},
              {"w", matrix_to_json(r.w)},
              {"v_resummed", matrix_to_json(r.v_resummed)},
              {"residual_blockdiag", r.residual_blockdiag},
              {"residual_isospectral", r.residual_isospectral},
              {"w_distance", r.w_distance}};
}

json bound_report_to_json(const BoundReport& r) {
  return json{{"d", r.d},
              {"eta", r.eta},
              {"epsilon", r.epsilon},
              {"norm_v", r.norm_v},
              {"zeno_a", r.zeno_a},
              {"zeno_b", r.zeno_b},
              {"delta_hat_inf", r.delta_hat_inf},
              {"linear_bound", r.linear_bound},
              {"x0", r.x0},
              {"validity", r.validity}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& t) {
  t.grid.validate();
  if (t.values.size() != t.grid.times.size())
    throw DomainError("trajectory: values length != grid length");
  for (const cplx& v : t.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("trajectory: non-finite value");
  std::string out;
  out.reserve(t.values.size() * 24);
  out += t.real_valued ? "t,value\n" : "t,re,im\n";
  for (size_t i = 0; i < t.values.size(); ++i) {
    out += format_double(t.grid.times[i]);
    out += ',';
    out += format_double(t.values[i].real());
    if (!t.real_valued) {
      out += ',';
      out += format_double(t.values[i].imag());
    }
    out += '\n';
  }
  return out;
}

void write_trajectory(const std::string& csv_path, const Trajectory& t) {
  write_text_file(csv_path, trajectory_csv(t));
  json meta{{"epsilon", t.meta.epsilon},
            {"seed", t.meta.seed},
            {"model", t.meta.model},
            {"quantity", t.meta.quantity},
            {"variant", t.meta.variant},
            {"points", t.grid.size()},
            {"spacing", t.grid.spacing == TimeGrid::Spacing::Linear ? "linear" : "geometric"}};
  write_text_file(csv_path + ".meta.json", meta.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << body;
}

}  // namespace qkam
