#include "warpcore/serialize.hpp"

#include <stdexcept>

namespace warpcore::serialize {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix_from_json: expected nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix_from_json: ragged rows");
    for (int c = 0; c < cols; ++c) {
      const auto& e = j[i][c];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix_from_json: entries are [re, im]");
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

RealMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("real_matrix_from_json: expected nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  RealMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  return m;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVector vector_from_json(const json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        Complex(j[i][0].get<double>(), j[i][1].get<double>());
  return v;
}

json system_to_json(const covariant::CovariantSystem& sys) {
  json out;
  out["form"] = sys.form().kind() == minkowski::FormKind::Lorentz
                    ? "lorentz"
                    : "euclidean";
  out["generators"] = json::array();
  for (const auto& p : sys.generators())
    out["generators"].push_back(matrix_to_json(p));
  if (sys.omega()) out["omega"] = vector_to_json(*sys.omega());
  return out;
}

covariant::CovariantSystem system_from_json(const json& j) {
  const std::string form_name = j.at("form").get<std::string>();
  std::vector<Matrix> gens;
  for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
  if (gens.empty())
    throw std::invalid_argument("system_from_json: no generators");
  const int n = static_cast<int>(gens.size());
  minkowski::BilinearForm form = form_name == "lorentz"
                                     ? minkowski::BilinearForm::lorentz(n)
                                     : minkowski::BilinearForm::euclidean(n);
  std::optional<CVector> omega;
  if (j.contains("omega")) omega = vector_from_json(j["omega"]);
  return covariant::CovariantSystem::build(std::move(gens), form, omega);
}

}  // namespace warpcore::serialize
