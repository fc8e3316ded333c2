// Copyright 2026 The latticeshuttle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latticeshuttle/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <tuple>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

CouplingProfile CouplingProfile::Lerp(const CouplingProfile& a,
                                      const CouplingProfile& b, double f) {
  auto mix = [f](double x, double y) {
    if (f == 0.0) return x;
    if (f == 1.0) return y;
    return (1.0 - f) * x + f * y;
  };
  return {mix(a.j_odd, b.j_odd), mix(a.j_even, b.j_even), mix(a.u, b.u),
          mix(a.tilt_slope, b.tilt_slope)};
}

void CouplingProfile::validate() const {
  if (!(j_odd >= 0.0) || !(j_even >= 0.0)) {
    throw ConfigError("tunnelling amplitudes must be non-negative");
  }
  if (!(u >= 0.0)) throw ConfigError("onsite energy must be non-negative");
  if (!std::isfinite(tilt_slope)) throw ConfigError("tilt slope must be finite");
}

std::shared_ptr<const HamiltonianStructure> HamiltonianStructure::Build(
    BasisPtr basis) {
  auto s = std::make_shared<HamiltonianStructure>();
  const std::size_t dim = basis->dim();
  const int n_sites = basis->n_sites();
  const int n_particles = basis->n_particles();

  s->row_ptr.reserve(dim + 1);
  s->row_ptr.push_back(0);
  s->same_spin_pairs.resize(dim);
  s->opposite_spin_pairs.resize(dim);
  s->site_weight.resize(dim);
  s->diag_pos.resize(dim);

  // (col, link, factor) for the current row.
  std::vector<std::tuple<std::int32_t, std::int32_t, double>> row;
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& modes = basis->modes(r);
    row.clear();
    row.emplace_back(static_cast<std::int32_t>(r), 0, 0.0);

    double weight = 0.0;
    for (int p = 0; p < n_particles; ++p) weight += modes[p] / 2 + 1;
    s->site_weight[r] = weight;
    if (n_particles == 2) {
      if (modes[0] == modes[1]) {
        s->same_spin_pairs[r] = 2.0;
      } else if (modes[0] / 2 == modes[1] / 2) {
        s->opposite_spin_pairs[r] = 1.0;
      }
    }

    for (int p = 0; p < n_particles; ++p) {
      // Each distinct occupied mode hops once.
      if (p > 0 && modes[p] == modes[p - 1]) continue;
      const int src = modes[p];
      const int site = src / 2 + 1;
      const int n_src = static_cast<int>(
          std::count(modes.begin(), modes.begin() + n_particles, src));
      for (int step : {-1, +1}) {
        const int target_site = site + step;
        if (target_site < 1 || target_site > n_sites) continue;
        const int dst = src + 2 * step;
        const int n_dst = static_cast<int>(
            std::count(modes.begin(), modes.begin() + n_particles, dst));
        FockBasis::ModeList next = modes;
        next[p] = static_cast<std::uint16_t>(dst);
        if (n_particles == 2) std::sort(next.begin(), next.end());
        const auto col = basis->index_of_modes(next);
        row.emplace_back(static_cast<std::int32_t>(col),
                         std::min(site, target_site),
                         std::sqrt(static_cast<double>(n_src)) *
                             std::sqrt(static_cast<double>(n_dst + 1)));
      }
    }
    std::sort(row.begin(), row.end());
    for (const auto& [col, link, factor] : row) {
      if (col == static_cast<std::int32_t>(r)) {
        s->diag_pos[r] = static_cast<std::int64_t>(s->cols.size());
      }
      s->cols.push_back(col);
      s->link.push_back(link);
      s->bosonic_factor.push_back(factor);
    }
    s->row_ptr.push_back(static_cast<std::int64_t>(s->cols.size()));
  }
  s->basis = std::move(basis);
  return s;
}

SparseHamiltonian::SparseHamiltonian(
    std::shared_ptr<const HamiltonianStructure> structure,
    CouplingProfile profile)
    : structure_(std::move(structure)), profile_(profile) {
  profile_.validate();
  const auto& s = *structure_;
  values_.resize(s.cols.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (s.link[k] != 0) {
      values_[k] = -profile_.link_coupling(s.link[k]) * s.bosonic_factor[k];
    }
  }
  const double half_u = 0.5 * profile_.u;
  for (std::size_t r = 0; r < s.diag_pos.size(); ++r) {
    values_[static_cast<std::size_t>(s.diag_pos[r])] =
        half_u * s.same_spin_pairs[r] + half_u * s.opposite_spin_pairs[r] +
        profile_.tilt_slope * s.site_weight[r];
  }
  one_norm_ = compute_one_norm();
}

SparseHamiltonian::SparseHamiltonian(
    std::shared_ptr<const HamiltonianStructure> structure,
    CouplingProfile profile, std::vector<Complex> values)
    : structure_(std::move(structure)),
      profile_(profile),
      values_(std::move(values)) {
  one_norm_ = compute_one_norm();
}

void SparseHamiltonian::multiply(const Eigen::VectorXcd& in,
                                 Eigen::VectorXcd& out) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (in.size() != n) throw ConfigError("multiply: input size mismatch");
  out.resize(n);
  multiply(in.data(), out.data());
}

void SparseHamiltonian::multiply(const Complex* in, Complex* out) const {
  const auto& s = *structure_;
  const Complex* val = values_.data();
  const std::int32_t* col = s.cols.data();
  const std::int64_t* row = s.row_ptr.data();
  const auto n = static_cast<std::int64_t>(s.row_ptr.size()) - 1;
  // Spelled out to avoid the NaN-propagating complex multiply helper.
  for (std::int64_t r = 0; r < n; ++r) {
    double re = 0.0;
    double im = 0.0;
    for (auto k = row[r]; k < row[r + 1]; ++k) {
      const Complex a = val[k];
      const Complex b = in[col[k]];
      re += a.real() * b.real() - a.imag() * b.imag();
      im += a.real() * b.imag() + a.imag() * b.real();
    }
    out[r] = Complex(re, im);
  }
}

Complex SparseHamiltonian::coeff(std::size_t row, std::size_t col) const {
  const auto& s = *structure_;
  const auto begin = s.cols.begin() + s.row_ptr[row];
  const auto end = s.cols.begin() + s.row_ptr[row + 1];
  const auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(col));
  if (it == end || *it != static_cast<std::int32_t>(col)) return 0.0;
  return values_[static_cast<std::size_t>(it - s.cols.begin())];
}

double SparseHamiltonian::compute_one_norm() const {
  const auto& s = *structure_;
  double best = 0.0;
  for (std::size_t r = 0; r + 1 < s.row_ptr.size(); ++r) {
    double sum = 0.0;
    for (auto k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) sum += std::abs(values_[k]);
    best = std::max(best, sum);
  }
  return best;
}

double SparseHamiltonian::hermiticity_defect() const {
  const auto& s = *structure_;
  double worst = 0.0;
  for (std::size_t r = 0; r + 1 < s.row_ptr.size(); ++r) {
    for (auto k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) {
      const auto c = static_cast<std::size_t>(s.cols[k]);
      worst = std::max(worst, std::abs(values_[k] - std::conj(coeff(c, r))));
    }
  }
  return worst;
}

Eigen::MatrixXcd SparseHamiltonian::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const auto& s = *structure_;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (auto k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) m(r, s.cols[k]) = values_[k];
  }
  return m;
}

void SparseHamiltonian::write_coo(std::ostream& os) const {
  const auto& s = *structure_;
  const auto old_precision = os.precision(17);
  for (std::size_t r = 0; r + 1 < s.row_ptr.size(); ++r) {
    for (auto k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) {
      os << r << ' ' << s.cols[k] << ' ' << values_[k].real() << ' '
         << values_[k].imag() << '\n';
    }
  }
  os.precision(old_precision);
}

SparseHamiltonian build_hamiltonian(const BasisPtr& basis,
                                    const CouplingProfile& profile) {
  return SparseHamiltonian(HamiltonianStructure::Build(basis), profile);
}

SparseHamiltonian build_hamiltonian(
    const std::shared_ptr<const HamiltonianStructure>& structure,
    const CouplingProfile& profile) {
  return SparseHamiltonian(structure, profile);
}

StateVector apply(const SparseHamiltonian& h, const StateVector& v) {
  if (!(*h.basis() == *v.basis())) throw ConfigError("apply: basis mismatch");
  Eigen::VectorXcd out;
  h.multiply(v.amplitudes(), out);
  return StateVector(v.basis(), std::move(out));
}

double expectation(const SparseHamiltonian& h, const StateVector& v) {
  if (!(*h.basis() == *v.basis())) throw ConfigError("expectation: basis mismatch");
  Eigen::VectorXcd hv;
  h.multiply(v.amplitudes(), hv);
  return v.amplitudes().dot(hv).real();
}

SparseHamiltonian interpolate(const SparseHamiltonian& h_a,
                              const SparseHamiltonian& h_b, double fraction) {
  if (!(*h_a.basis() == *h_b.basis())) {
    throw ConfigError("interpolate: basis mismatch");
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ConfigError("interpolate: fraction must lie in [0, 1]");
  }
  if (fraction == 0.0) return h_a;
  if (fraction == 1.0) return h_b;
  // Structures built from equal bases are identical, so values align.
  std::vector<Complex> values(h_a.values_.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = (1.0 - fraction) * h_a.values_[k] + fraction * h_b.values_[k];
  }
  return SparseHamiltonian(h_a.structure_,
                           CouplingProfile::Lerp(h_a.profile_, h_b.profile_,
                                                 fraction),
                           std::move(values));
}

}  // namespace latticeshuttle
