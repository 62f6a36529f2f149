#include "qclab/attacks/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <map>

#include <Eigen/Eigenvalues>

#include "qclab/core/error.hpp"
#include "qclab/core/ops.hpp"
#include "qclab/core/pauli.hpp"

namespace qclab {

namespace {

Eigen::VectorXd tail_coordinates(const CMatrix& m) {
  const Eigen::VectorXd all = pauli_coordinates(m);
  return all.tail(all.size() - 1);
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

// Hash cell of a coordinate vector for deduplication lookups.
std::vector<std::int64_t> cell_of(const Eigen::VectorXd& c, double side) {
  std::vector<std::int64_t> cell(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    cell[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(c[i] / side));
  }
  return cell;
}

}  // namespace

DensityMatrix project_to_states(const CMatrix& hermitian) {
  const CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const Eigen::VectorXd p = project_to_simplex(solver.eigenvalues());
  const CMatrix& v = solver.eigenvectors();
  CMatrix rho = v * p.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(unchecked, std::move(rho));
}

std::vector<std::size_t> EpsNet::within(const CMatrix& m, double radius) const {
  const Eigen::VectorXd c = tail_coordinates(m);
  const double lower_scale = 0.5 / std::sqrt(static_cast<double>(dim));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (lower_scale * (coordinates[i] - c).norm() > radius) continue;
    if (half_trace_norm(elements[i].matrix() - m) <= radius) out.push_back(i);
  }
  return out;
}

double EpsNet::min_distance(const CMatrix& m) const {
  const Eigen::VectorXd c = tail_coordinates(m);
  const double lower_scale = 0.5 / std::sqrt(static_cast<double>(dim));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (lower_scale * (coordinates[i] - c).norm() >= best) continue;
    best = std::min(best, half_trace_norm(elements[i].matrix() - m));
  }
  return best;
}

EpsNet build_net(int num_qubits, double gamma, const NetOptions& options) {
  if (!(gamma > 0.0)) throw InvalidArgument("net radius must be positive");
  if (num_qubits < 1 || num_qubits > 2) {
    throw ParamTooLarge("mixed-state nets are supported for d in {2, 4}");
  }
  EpsNet net;
  net.gamma = gamma;
  net.num_qubits = num_qubits;
  net.dim = dimension_of(num_qubits);
  const double d = static_cast<double>(net.dim);
  const auto axes = static_cast<int>(net.dim * net.dim - 1);
  const double c_impl = 2.0 * std::sqrt(static_cast<double>(axes)) / 3.0 + 1.0;

  auto finish = [&](const std::string& kind, double step, std::int64_t per_axis,
                    std::int64_t grid_points, std::int64_t kept, std::int64_t merged) {
    const double size = static_cast<double>(net.elements.size());
    net.construction = Json{{"kind", kind},
                            {"pauli_axes", axes},
                            {"step", step},
                            {"points_per_axis", per_axis},
                            {"grid_points", grid_points},
                            {"kept", kept},
                            {"merged", merged},
                            {"size", net.elements.size()},
                            {"c_impl", c_impl},
                            {"c_effective", gamma * std::pow(size, 1.0 / (d * d))},
                            {"size_bound", std::pow(c_impl / gamma, d * d)}};
  };

  // The maximally mixed state is within 1 - 1/d of every state.
  if (gamma > 1.0 - 1.0 / d) {
    net.elements.push_back(DensityMatrix::maximally_mixed(num_qubits));
    net.coordinates.push_back(Eigen::VectorXd::Zero(axes));
    finish("maximally_mixed", 0.0, 1, 1, 1, 0);
    return net;
  }

  const double step = 3.0 * gamma / std::sqrt(static_cast<double>(axes));
  const auto per_axis = static_cast<std::int64_t>(std::ceil(2.0 / step));
  const double grid_points = std::pow(static_cast<double>(per_axis), axes);
  if (grid_points > static_cast<double>(options.max_elements)) {
    throw NetTooLarge("net grid has " + std::to_string(grid_points) + " points (limit " +
                      std::to_string(options.max_elements) + "); coarsen gamma");
  }
  // Frobenius radius of a grid cell around its centre.
  const double cell_radius = 0.5 * step * std::sqrt(static_cast<double>(axes)) / std::sqrt(d);
  // States satisfy |c|^2 <= d - 1.
  const double coord_limit = std::sqrt(d - 1.0) + cell_radius * std::sqrt(d);

  const auto total = static_cast<std::int64_t>(grid_points);
  std::vector<std::int64_t> digits(static_cast<std::size_t>(axes), 0);
  std::int64_t kept = 0;
  std::int64_t merged = 0;
  const double dedup_radius = gamma / 4.0;
  const bool dedup = axes <= 3;
  const double cell_side = gamma * std::sqrt(d) / 2.0;
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> cells;

  for (std::int64_t g = 0; g < total; ++g) {
    Eigen::VectorXd coords(1 + axes);
    coords[0] = 1.0;
    std::int64_t rest = g;
    for (int a = axes - 1; a >= 0; --a) {
      coords[1 + a] = -1.0 + step * (static_cast<double>(rest % per_axis) + 0.5);
      rest /= per_axis;
    }
    if (coords.tail(axes).norm() > coord_limit) continue;
    const CMatrix x = from_pauli_coordinates(coords, num_qubits);
    DensityMatrix rho = project_to_states(x);
    if ((x - rho.matrix()).norm() > cell_radius) continue;
    ++kept;
    Eigen::VectorXd c = tail_coordinates(rho.matrix());
    if (dedup) {
      const auto cell = cell_of(c, cell_side);
      bool duplicate = false;
      const auto dims = static_cast<int>(cell.size());
      std::int64_t neighbours = 1;
      for (int i = 0; i < dims; ++i) neighbours *= 3;
      for (std::int64_t nb = 0; nb < neighbours && !duplicate; ++nb) {
        auto key = cell;
        std::int64_t r = nb;
        for (int i = 0; i < dims; ++i) {
          key[static_cast<std::size_t>(i)] += r % 3 - 1;
          r /= 3;
        }
        const auto it = cells.find(key);
        if (it == cells.end()) continue;
        for (std::size_t idx : it->second) {
          if (half_trace_norm(net.elements[idx].matrix() - rho.matrix()) <= dedup_radius) {
            duplicate = true;
            break;
          }
        }
      }
      if (duplicate) {
        ++merged;
        continue;
      }
      cells[cell].push_back(net.elements.size());
    }
    net.elements.push_back(std::move(rho));
    net.coordinates.push_back(std::move(c));
  }
  finish("pauli_grid", step, per_axis, total, kept, merged);
  return net;
}

Json NetCoverage::to_json() const {
  return Json{{"samples", samples},
              {"covered", covered},
              {"fraction", fraction},
              {"max_distance", max_distance}};
}

NetCoverage audit_net_covering(const EpsNet& net, std::int64_t samples, Rng& rng,
                               bool pure_samples) {
  NetCoverage out;
  out.samples = samples;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng r = rng.child(static_cast<std::uint64_t>(i));
    const DensityMatrix rho = pure_samples
                                  ? DensityMatrix::from_pure(haar_sample(net.num_qubits, r))
                                  : random_density_matrix(net.num_qubits, r);
    const double dist = net.min_distance(rho.matrix());
    out.max_distance = std::max(out.max_distance, dist);
    if (dist <= net.gamma) ++out.covered;
  }
  out.fraction = samples > 0 ? static_cast<double>(out.covered) / static_cast<double>(samples) : 0.0;
  return out;
}

}  // namespace qclab
