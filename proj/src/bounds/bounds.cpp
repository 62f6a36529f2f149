#include "qclab/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"

namespace qclab {

namespace {

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

CVector vector_from_json(const Json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return v;
}

Json states_to_json(const std::vector<PureState>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(vector_to_json(s.amplitudes()));
  return out;
}

std::vector<PureState> states_from_json(const Json& j) {
  std::vector<PureState> out;
  for (const auto& s : j) out.emplace_back(vector_from_json(s));
  return out;
}

double binomial(std::int64_t n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

struct TailCount {
  std::int64_t hits = 0;
  double expected = 0.0;
};

TailCount haar_tail(int m, double h, std::int64_t samples, std::uint64_t seed) {
  Rng r(seed);
  TailCount t;
  for (std::int64_t i = 0; i < samples; ++i) {
    if (std::norm(haar_sample(m, r).amplitudes()[0]) >= h) ++t.hits;
  }
  t.expected = std::pow(1.0 - h, std::ldexp(1.0, m) - 1.0);
  return t;
}

BoundCheck haar_tail_check(int m, double h, std::int64_t samples, std::uint64_t seed) {
  const TailCount t = haar_tail(m, h, samples, seed);
  const double n = static_cast<double>(samples);
  const double slack = 3.0 * std::sqrt(t.expected * (1.0 - t.expected) / n) + 1e-12;
  return make_check("haar_tail", static_cast<double>(t.hits) / n, "==", t.expected, slack,
                    Json{{"check", "haar_tail"},
                         {"m", m},
                         {"h", h},
                         {"samples", samples},
                         {"seed", seed},
                         {"hits", t.hits}});
}

Eigen::VectorXd random_weights(Rng& r, std::int64_t count) {
  Eigen::VectorXd p(count);
  const auto style = r.below(3);
  for (std::int64_t i = 0; i < count; ++i) {
    if (style == 0) {
      p[i] = 1.0;
    } else {
      // Exponential weights give a flat Dirichlet draw; squaring skews them.
      const double e = -std::log(1.0 - r.uniform());
      p[i] = style == 1 ? e : e * e;
    }
  }
  return p / p.sum();
}

}  // namespace

Json BoundCheck::to_json() const {
  return Json{{"name", name},           {"lhs", lhs},   {"rhs", rhs},
              {"relation", relation},   {"margin", margin}, {"tolerance", tolerance},
              {"holds", holds},         {"witness", witness}};
}

BoundCheck make_check(std::string name, double lhs, const std::string& relation, double rhs,
                      double tolerance, Json witness) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = relation;
  if (relation == ">=") {
    c.margin = lhs - rhs;
  } else if (relation == "<=") {
    c.margin = rhs - lhs;
  } else if (relation == "==") {
    c.margin = -std::abs(lhs - rhs);
  } else {
    throw InvalidArgument("unknown relation '" + relation + "'");
  }
  c.tolerance = tolerance;
  c.holds = c.margin >= -tolerance;
  c.witness = std::move(witness);
  return c;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    m.row(r) = vector_from_json(j[static_cast<std::size_t>(r)]).transpose();
  }
  return m;
}

BoundCheck aggregate(std::string name, const std::vector<BoundCheck>& checks, double tolerance) {
  Json margins = Json::array();
  double worst = std::numeric_limits<double>::infinity();
  std::int64_t violations = 0;
  for (const auto& c : checks) {
    margins.push_back(c.margin);
    worst = std::min(worst, c.margin);
    if (!c.holds) ++violations;
  }
  if (checks.empty()) worst = 0.0;
  auto out = make_check(std::move(name), worst, ">=", -tolerance, 0.0,
                        Json{{"check", "aggregate"},
                             {"count", checks.size()},
                             {"violations", violations},
                             {"tolerance", tolerance},
                             {"margins", margins}});
  out.holds = out.holds && violations == 0;
  return out;
}

BoundCheck welch_check(const std::vector<PureState>& states, const Eigen::VectorXd& dist, int k,
                       double tolerance) {
  if (states.empty()) throw InvalidArgument("welch check needs at least one state");
  if (k < 1 || k > 3) throw InvalidArgument("welch check supports k in {1, 2, 3}");
  if (dist.size() != static_cast<Eigen::Index>(states.size()) || dist.minCoeff() < -kEps ||
      std::abs(dist.sum() - 1.0) > kEps) {
    throw BadDistribution("weights must be a probability vector over the states");
  }
  const std::int64_t d = states.front().dim();
  CMatrix cols(d, static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw DimensionMismatch("welch ensemble mixes dimensions");
    cols.col(static_cast<Eigen::Index>(i)) = states[i].amplitudes();
  }
  const Eigen::MatrixXd abs2 = (cols.adjoint() * cols).cwiseAbs2();
  Json witness{{"check", "welch"},
               {"k", k},
               {"tolerance", tolerance},
               {"dist", std::vector<double>(dist.data(), dist.data() + dist.size())},
               {"states", states_to_json(states)}};
  if (k == 1) {
    const double lhs = dist.dot(abs2 * dist);
    return make_check("welch", lhs, ">=", 1.0 / static_cast<double>(d), tolerance,
                      std::move(witness));
  }
  // <psi_i|psi_j> = sqrt(p_i p_j) <phi_i|phi_j>.
  double sum = 0.0;
  double diag = 0.0;
  for (Eigen::Index i = 0; i < abs2.rows(); ++i) {
    diag += std::pow(dist[i], k);
    for (Eigen::Index j = 0; j < abs2.cols(); ++j) {
      sum += std::pow(dist[i] * dist[j] * abs2(i, j), k);
    }
  }
  return make_check("welch", binomial(d + k - 1, k) * sum, ">=", diag * diag, tolerance,
                    std::move(witness));
}

std::vector<BoundCheck> welch_sweep(std::int64_t instances, Rng& rng, int k) {
  std::vector<BoundCheck> out;
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng r = rng.child(static_cast<std::uint64_t>(i));
    const int m = 1 + static_cast<int>(r.below(3));
    const auto count = static_cast<std::int64_t>(1 + r.below(16));
    std::vector<PureState> states;
    for (std::int64_t s = 0; s < count; ++s) states.push_back(haar_sample(m, r));
    out.push_back(welch_check(states, random_weights(r, count), k));
  }
  return out;
}

BoundCheck haar_concentration_check(int m, double h, std::int64_t samples, Rng& rng) {
  if (h < 0.0 || h > 1.0) throw InvalidArgument("h must lie in [0, 1]");
  if (samples < 10'000) throw InvalidArgument("haar concentration needs at least 10^4 samples");
  return haar_tail_check(m, h, samples, rng.child("haar-tail").seed());
}

BoundCheck trf_check(const DensityMatrix& rho, const DensityMatrix& sigma, double tolerance) {
  return make_check("trace_product_vs_fidelity", trace_product(rho.matrix(), sigma.matrix()), "<=",
                    fidelity(rho, sigma), tolerance,
                    Json{{"check", "trf"},
                         {"tolerance", tolerance},
                         {"rho", matrix_to_json(rho.matrix())},
                         {"sigma", matrix_to_json(sigma.matrix())}});
}

std::vector<BoundCheck> trf_sweep(std::int64_t instances, int num_qubits, Rng& rng) {
  std::vector<BoundCheck> out;
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng r = rng.child(static_cast<std::uint64_t>(i));
    const auto rho = random_density_matrix(num_qubits, r);
    // Every fourth instance pairs a pure state with a mixed one.
    const auto sigma = i % 4 == 3 ? DensityMatrix::from_pure(haar_sample(num_qubits, r))
                                  : random_density_matrix(num_qubits, r);
    out.push_back(trf_check(rho, sigma));
  }
  return out;
}

BoundCheck fidelity_mix_check(const std::vector<PureState>& states, double tolerance) {
  if (states.empty()) throw InvalidArgument("fidelity mix check needs at least one state");
  const std::int64_t d = states.front().dim();
  CMatrix avg = CMatrix::Zero(d, d);
  for (const auto& s : states) {
    if (s.dim() != d) throw DimensionMismatch("fidelity mix check mixes dimensions");
    avg += s.amplitudes() * s.amplitudes().adjoint();
  }
  avg /= static_cast<double>(states.size());
  const DensityMatrix mix(unchecked, std::move(avg));
  const int m = states.front().num_qubits();
  const double f = fidelity(mix, DensityMatrix::maximally_mixed(m));
  return make_check("fidelity_with_maximally_mixed", f, "<=",
                    static_cast<double>(states.size()) / static_cast<double>(d), tolerance,
                    Json{{"check", "fidelity_mix"},
                         {"tolerance", tolerance},
                         {"states", states_to_json(states)}});
}

BoundCheck fidelity_mix_check(int n, int m, Rng& rng) {
  if (n < 0 || n > m + 4) throw InvalidArgument("fidelity mix check needs 0 <= n <= m + 4");
  std::vector<PureState> states;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < count; ++k) states.push_back(haar_sample(m, rng));
  return fidelity_mix_check(states);
}

std::vector<BoundCheck> projector_td_check(const CMatrix& a, const CMatrix& b,
                                           const CMatrix& projector, double tolerance) {
  const CMatrix diff = a - b;
  const HermitianMatrix h(diff);
  const double norm = half_trace_norm(diff);
  const double tr = diff.trace().real();
  const double best = trace_product(positive_part_projector(h).matrix(), diff);
  const double value = trace_product(projector, diff);
  const Json base{{"tolerance", tolerance},
                  {"a", matrix_to_json(a)},
                  {"b", matrix_to_json(b)},
                  {"projector", matrix_to_json(projector)}};
  auto witness = [&base](const char* kind) {
    Json w = base;
    w["check"] = kind;
    return w;
  };
  return {make_check("positive_part_attains_max", best, "==", norm + tr / 2.0, tolerance,
                     witness("projector_equality")),
          make_check("projector_below_max", value, "<=", best, tolerance,
                     witness("projector_max")),
          make_check("projector_vs_trace_norm", std::abs(value), "<=", 2.0 * norm, tolerance,
                     witness("projector_trace_norm"))};
}

Projector random_projector(std::int64_t dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.complex_normal();
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(g).householderQ() * CMatrix::Identity(dim, dim);
  const auto rank = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(dim) + 1));
  const CMatrix cols = q.leftCols(rank);
  return Projector(unchecked, cols * cols.adjoint());
}

std::vector<BoundCheck> projector_td_sweep(std::int64_t instances, int num_qubits, Rng& rng) {
  const auto dim = dimension_of(num_qubits);
  std::vector<BoundCheck> out;
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng r = rng.child(static_cast<std::uint64_t>(i));
    const CMatrix a = random_hermitian(dim, r);
    const CMatrix b = random_hermitian(dim, r);
    const auto checks = projector_td_check(a, b, random_projector(dim, r).matrix());
    out.insert(out.end(), checks.begin(), checks.end());
  }
  return out;
}

BoundCheck recompute(const BoundCheck& check) {
  const Json& w = check.witness;
  const std::string kind = w.at("check").get<std::string>();
  if (kind == "welch") {
    const auto p = w.at("dist").get<std::vector<double>>();
    return welch_check(states_from_json(w.at("states")),
                       Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())),
                       w.at("k").get<int>(), w.at("tolerance").get<double>());
  }
  if (kind == "haar_tail") {
    return haar_tail_check(w.at("m").get<int>(), w.at("h").get<double>(),
                           w.at("samples").get<std::int64_t>(), w.at("seed").get<std::uint64_t>());
  }
  if (kind == "trf") {
    return trf_check(DensityMatrix(unchecked, matrix_from_json(w.at("rho"))),
                     DensityMatrix(unchecked, matrix_from_json(w.at("sigma"))),
                     w.at("tolerance").get<double>());
  }
  if (kind == "fidelity_mix") {
    return fidelity_mix_check(states_from_json(w.at("states")), w.at("tolerance").get<double>());
  }
  if (kind == "projector_equality" || kind == "projector_max" || kind == "projector_trace_norm") {
    const auto all = projector_td_check(matrix_from_json(w.at("a")), matrix_from_json(w.at("b")),
                                        matrix_from_json(w.at("projector")),
                                        w.at("tolerance").get<double>());
    return kind == "projector_equality" ? all[0] : kind == "projector_max" ? all[1] : all[2];
  }
  if (kind == "aggregate") {
    std::vector<BoundCheck> stubs;
    const double tol = w.at("tolerance").get<double>();
    for (const auto& m : w.at("margins")) {
      stubs.push_back(make_check("", m.get<double>(), ">=", 0.0, tol, Json::object()));
    }
    return aggregate(check.name, stubs, tol);
  }
  throw InvalidArgument("unknown bound check kind '" + kind + "'");
}

}  // namespace qclab
