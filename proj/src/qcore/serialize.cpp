#include "vqpt/serialize.hpp"

#include <stdexcept>

namespace vqpt {

using nlohmann::json;

namespace {

template <typename Entries>
json pack(std::int64_t dim, const Entries& entries)
{
  json re = json::array(), im = json::array();
  for (const Complex& z : entries) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return json{{"dim", dim}, {"re", std::move(re)}, {"im", std::move(im)}};
}

std::vector<Complex> unpack(const json& j, std::size_t expected)
{
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != expected || im.size() != expected)
    throw std::invalid_argument("json: expected " + std::to_string(expected) + " entries");
  std::vector<Complex> out(expected);
  for (std::size_t i = 0; i < expected; ++i)
    out[i] = Complex(re[i].get<double>(), im[i].get<double>());
  return out;
}

} // namespace

json to_json(const StateVector& s)
{
  return pack(static_cast<std::int64_t>(s.dim()), s.data());
}

json to_json(const UnitaryMatrix& u)
{
  std::vector<Complex> rows;
  rows.reserve(static_cast<std::size_t>(u.dim() * u.dim()));
  for (Eigen::Index r = 0; r < u.dim(); ++r)
    for (Eigen::Index c = 0; c < u.dim(); ++c)
      rows.push_back(u(r, c));
  return pack(u.dim(), rows);
}

json to_json(const AnsatzSpec& spec)
{
  return json{{"n", spec.n_qubits}, {"d", spec.depth}, {"variant", std::string(to_string(spec.variant))}};
}

json to_json(const ParamVector& theta) { return json(theta.values()); }

StateVector state_from_json(const json& j)
{
  const auto dim = j.at("dim").get<std::int64_t>();
  qubits_for_dim(dim);
  const auto entries = unpack(j, static_cast<std::size_t>(dim));
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v[i] = entries[static_cast<std::size_t>(i)];
  return StateVector(std::move(v));
}

UnitaryMatrix unitary_from_json(const json& j)
{
  const auto dim = j.at("dim").get<std::int64_t>();
  qubits_for_dim(dim);
  const auto entries = unpack(j, static_cast<std::size_t>(dim * dim));
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      m(r, c) = entries[static_cast<std::size_t>(r * dim + c)];
  return UnitaryMatrix(std::move(m));
}

AnsatzSpec ansatz_spec_from_json(const json& j)
{
  return AnsatzSpec(j.at("n").get<int>(), j.at("d").get<int>(),
                    variant_from_string(j.at("variant").get<std::string>()));
}

ParamVector params_from_json(const json& j)
{
  if (!j.is_array())
    throw std::invalid_argument("json: parameter vector must be an array");
  return ParamVector(j.get<std::vector<double>>());
}

} // namespace vqpt
