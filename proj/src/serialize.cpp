#include "repq/serialize.hpp"

#include <stdexcept>

namespace repq {

using nlohmann::json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.push_back({v(k).real(), v(k).imag()});
  }
  return out;
}

json to_json(const AlgebraDescriptor& descriptor) {
  return json{{"block_dims", descriptor.block_dims()}};
}

json to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const Matrix& b : a.blocks()) blocks.push_back(to_json(b));
  return json{{"block_dims", a.descriptor().block_dims()}, {"blocks", std::move(blocks)}};
}

json to_json(const Functional& phi) {
  json blocks = json::array();
  for (const Matrix& b : phi.density_blocks()) blocks.push_back(to_json(b));
  return json{{"block_dims", phi.descriptor().block_dims()},
              {"densities", std::move(blocks)}};
}

json to_json(const Representation& pi) {
  json images = json::array();
  for (const Matrix& m : pi.images()) images.push_back(to_json(m));
  return json{{"block_dims", pi.descriptor().block_dims()},
              {"ambient_dim", pi.ambient_dim()},
              {"images", std::move(images)}};
}

json to_json(const GnsTriple& triple) {
  json reps = json::array();
  for (const Matrix& m : triple.rep_matrices) reps.push_back(to_json(m));
  return json{{"block_dims", triple.descriptor.block_dims()},
              {"space_dim", triple.space_dim},
              {"rep_matrices", std::move(reps)},
              {"cyclic_vector", to_json(triple.cyclic_vector)},
              {"class_matrix", to_json(triple.class_matrix)}};
}

namespace {

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entry must be a [re, im] pair");
  }
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row.at(static_cast<size_t>(c)));
    }
  }
  return m;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    v(k) = complex_from_json(j.at(static_cast<size_t>(k)));
  }
  return v;
}

AlgebraDescriptor descriptor_from_json(const json& j) {
  return AlgebraDescriptor(j.at("block_dims").get<std::vector<int>>());
}

AlgebraElement element_from_json(const json& j) {
  const AlgebraDescriptor desc = descriptor_from_json(j);
  const json& blocks = j.at("blocks");
  std::vector<Matrix> parsed;
  for (const json& b : blocks) parsed.push_back(matrix_from_json(b));
  return AlgebraElement(desc, std::move(parsed));
}

Functional functional_from_json(const json& j) {
  const AlgebraDescriptor desc = descriptor_from_json(j);
  const json& blocks = j.at("densities");
  std::vector<Matrix> parsed;
  for (const json& b : blocks) parsed.push_back(matrix_from_json(b));
  return Functional(desc, std::move(parsed));
}

Representation representation_from_json(const json& j) {
  const AlgebraDescriptor desc = descriptor_from_json(j);
  const int ambient = j.at("ambient_dim").get<int>();
  std::vector<Matrix> images;
  for (const json& b : j.at("images")) images.push_back(matrix_from_json(b));
  return Representation(desc, ambient, std::move(images));
}

GnsTriple gns_triple_from_json(const json& j) {
  GnsTriple t{descriptor_from_json(j), j.at("space_dim").get<int>(), {}, Vector(0), Matrix(0, 0)};
  for (const json& b : j.at("rep_matrices")) t.rep_matrices.push_back(matrix_from_json(b));
  t.cyclic_vector = vector_from_json(j.at("cyclic_vector"));
  t.class_matrix = matrix_from_json(j.at("class_matrix"));
  if (static_cast<int>(t.rep_matrices.size()) != t.descriptor.dim()) {
    throw std::invalid_argument("rep_matrices count does not match descriptor");
  }
  return t;
}

}  // namespace repq
