#include "dedonder/numeric/cauchy.hpp"

#include <cmath>
#include <stdexcept>

namespace dedonder {

void CauchyState::validate() const {
  if (!space.periodic) throw std::invalid_argument("Cauchy evolution needs a periodic spatial grid");
  GridSpec{{space}}.validate();
  for (const auto& f : fields)
    for (const auto& v : f) {
      if (v.size() != static_cast<std::size_t>(space.n))
        throw std::invalid_argument("Cauchy data shape mismatch");
      for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("Cauchy data contains non-finite values");
    }
}

namespace {

template <class Propagate>
CauchyState evolve_with(const CauchyState& state, double t_target, Propagate&& propagate) {
  state.validate();
  if (!std::isfinite(t_target)) throw std::invalid_argument("non-finite target time");
  std::vector<kernels::ModeBlock> blocks;
  for (const auto& f : state.fields) {
    kernels::ModeBlock blk;
    for (int r = 0; r < 4; ++r) blk[r] = real_fft(f[r]);
    blocks.push_back(std::move(blk));
  }
  propagate(state.space.hi - state.space.lo, t_target - state.t, blocks);
  CauchyState out{state.space, t_target, {}};
  for (const auto& blk : blocks) {
    std::array<std::vector<double>, 4> f;
    for (int r = 0; r < 4; ++r) f[r] = inverse_real_fft(blk[r], state.space.n);
    out.fields.push_back(std::move(f));
  }
  out.validate();
  return out;
}

}  // namespace

CauchyState cauchy_evolve(const CauchyState& state, double t_target) {
  return evolve_with(state, t_target, kernels::propagate_modes_omp);
}

CauchyState cauchy_evolve_serial(const CauchyState& state, double t_target) {
  return evolve_with(state, t_target, kernels::propagate_modes_serial);
}

CauchyState make_cauchy_state(const GridDim& space, double t,
                              const std::vector<std::array<LineFn, 4>>& data) {
  CauchyState s{space, t, {}};
  for (const auto& d : data) {
    std::array<std::vector<double>, 4> f;
    for (int r = 0; r < 4; ++r) {
      f[r].resize(static_cast<std::size_t>(space.n));
      for (int j = 0; j < space.n; ++j) f[r][j] = d[r](s.coordinate(j));
    }
    s.fields.push_back(std::move(f));
  }
  s.validate();
  return s;
}

kernels::JetTable slice_jets(const CauchyState& state, const JetConfig& cfg) {
  state.validate();
  if (cfg.m != 2 || cfg.n != static_cast<int>(state.fields.size()))
    throw std::invalid_argument("slice_jets: needs m = 2 and one Cauchy block per field");
  const GridSpec line{{state.space}};
  LineDifferentiator D(state.space);
  const std::size_t n = static_cast<std::size_t>(state.space.n);

  kernels::JetTable table;
  table.emplace(JetCoordinate::base(1), std::vector<double>(n, state.t));
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = state.coordinate(static_cast<int>(j));
  table.emplace(JetCoordinate::base(2), xs);

  for (int a = 1; a <= cfg.n; ++a) {
    // x-derivatives of each time derivative, up to total order 2k-1
    for (int c = 0; c <= 3 && c <= cfg.working_order(); ++c) {
      std::vector<double> cur = state.fields[a - 1][c];
      for (int r = 0; c + r <= cfg.working_order(); ++r) {
        std::vector<int> idx(static_cast<std::size_t>(c), 1);
        idx.insert(idx.end(), static_cast<std::size_t>(r), 2);
        table.emplace(JetCoordinate::jet(a, MultiIndex::canonical(idx, 2)), cur);
        std::vector<double> next(n);
        kernels::differentiate_omp(line, 0, D, cur.data(), next.data());
        cur = std::move(next);
      }
    }
  }
  return table;
}

}  // namespace dedonder
