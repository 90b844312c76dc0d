#include "irsroute/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace irsroute {

namespace {

// LoS channel from -> to in factored form c * rx * tx^H.
struct RankOne {
  Complex c;
  ComplexVector rx;
  ComplexVector tx;

  ComplexVector apply(const ComplexVector& x) const {
    return c * tx.dot(x) * rx;
  }
};

RankOne los_rank_one(const Scenario& s, int from, int to) {
  RankOne f;
  f.c = los_prefactor(s, from, to);
  f.tx = from == 0 ? bs_response_toward(s, to) : irs_response_toward(s, from, to);
  if (s.is_user(to)) {
    f.rx = ComplexVector::Ones(1);
  } else {
    f.rx = irs_response_toward(s, to, from);
  }
  return f;
}

// Rayleigh links collected along a route, applied per path-loss exponent.
struct Fading {
  int links = 0;
  double log_distance = 0.0;

  Fading operator+(const Fading& o) const {
    return {links + o.links, log_distance + o.log_distance};
  }
  double scale(double beta, double alpha) const {
    return std::pow(beta, 0.5 * links) * std::exp(-0.5 * alpha * log_distance);
  }
};

// x - 2 w (w^H x) / (w^H w)
ComplexVector householder(const ComplexVector& w, const ComplexVector& x) {
  const double ww = w.squaredNorm();
  if (ww == 0.0) return x;
  return x - (2.0 * w.dot(x) / ww) * w;
}

// Unitary U = phase * H with U e1 = u for a unit vector u; returns the
// Householder vector and the phase.
std::pair<ComplexVector, Complex> unitary_with_first_column(
    const ComplexVector& u) {
  const double a1 = std::abs(u(0));
  const Complex alpha = a1 == 0.0 ? Complex(-1.0) : -u(0) / a1;
  ComplexVector w = u;
  w(0) -= alpha;
  // H u = alpha e1, so H e1 = u / alpha and U = alpha H.
  return {w, alpha};
}

// For C with i.i.d. CN(0,1) entries (rows: `hi` side, columns: `lo` side),
// draws the pair (rho_hi^T C, C rho_lo) jointly.
std::pair<ComplexVector, ComplexVector> project_iid(
    const ComplexVector& rho_hi, const ComplexVector& rho_lo,
    std::uint64_t seed) {
  const int m_hi = static_cast<int>(rho_hi.size());
  const int m_lo = static_cast<int>(rho_lo.size());
  const double n_hi = rho_hi.norm();
  const double n_lo = rho_lo.norm();
  const ComplexVector g = complex_gaussian(m_hi + m_lo - 1, 1, seed);
  ComplexVector row(m_lo);  // first row of the rotated matrix
  ComplexVector col(m_hi);  // first column
  row(0) = g(0);
  col(0) = g(0);
  for (int t = 1; t < m_lo; ++t) row(t) = g(t);
  for (int t = 1; t < m_hi; ++t) col(t) = g(m_lo - 1 + t);

  // rho_hi^T = n_hi u^H with u = conj(rho_hi)/n_hi; C = U Ct V^H,
  // V e1 = v = rho_lo / n_lo. Then u^H C = row^T V^H and C v = U col.
  const auto [wu, au] = unitary_with_first_column(rho_hi.conjugate() / n_hi);
  const auto [wv, av] = unitary_with_first_column(rho_lo / n_lo);
  // row^T V^H as a column is conj(av) * H_v^T row, and
  // H_v^T row = conj(H_v conj(row)).
  const ComplexVector left =
      n_hi * std::conj(av) *
      householder(wv, row.conjugate()).conjugate();
  const ComplexVector right = n_lo * au * householder(wu, col);
  return {left, right};
}

struct Head {
  std::vector<int> seq;  // IRSs visited, BS excluded
  int path = -1;         // route index for prefix heads, -1 for BS heads
  int depth = 0;         // prefix length
};

struct Route {
  int head = 0;
  int tail = -1;  // extra IRS before the victim, -1 for none
};

}  // namespace

ScatterReport evaluate_scatter(const Scenario& s,
                               const RoutingSolution& solution, int victim,
                               const std::vector<double>& alphas,
                               std::uint64_t seed, int realizations) {
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (!solution.feasible) throw ContractViolation("solution is infeasible");
  const UserRoute* own = solution.route_for(victim);
  if (!own) {
    throw ContractViolation("user " + std::to_string(victim) +
                            " is not admitted by the solution");
  }
  const LosMap los = compute_los_map(s);
  const BeamGainTable table = build_gain_table(s, los, solution.mode);
  const int vk = s.user_node(victim);

  std::map<int, ComplexVector> theta;
  std::vector<ComplexVector> w;  // per route
  std::vector<std::vector<int>> paths;
  for (const UserRoute& r : solution.routes) {
    const PathBeams b = route_beams(s, los, table, r.nodes);
    w.push_back(b.w);
    paths.push_back(r.irs());
    for (size_t n = 0; n < b.passive.size(); ++n) {
      theta[r.nodes[n + 1]] = b.passive[n];
    }
  }
  std::vector<int> active;
  for (const auto& [irs, beam] : theta) active.push_back(irs);
  const int n_tx = static_cast<int>(w.size());
  int own_tx = 0;
  for (int t = 0; t < n_tx; ++t) {
    if (solution.routes[t].user == victim) own_tx = t;
  }

  ScatterReport report;
  report.victim = victim;
  report.alphas = alphas;
  {
    PathBeams b = route_beams(s, los, table, own->nodes);
    report.cascade = effective_gain(s, los, own->nodes, b);
  }

  // Route structure.
  std::vector<Head> heads;
  std::set<std::vector<int>> head_seen;
  for (size_t p = 0; p < paths.size(); ++p) {
    for (size_t m = 1; m <= paths[p].size(); ++m) {
      Head h;
      h.seq.assign(paths[p].begin(), paths[p].begin() + m);
      h.path = static_cast<int>(p);
      h.depth = static_cast<int>(m);
      if (head_seen.insert(h.seq).second) heads.push_back(h);
    }
  }
  for (int a : active) {
    Head h;
    h.seq = {a};
    if (head_seen.insert(h.seq).second) heads.push_back(h);
  }
  std::vector<Route> routes;
  std::set<std::vector<int>> route_seen;
  for (size_t h = 0; h < heads.size(); ++h) {
    if (route_seen.insert(heads[h].seq).second) {
      routes.push_back({static_cast<int>(h), -1});
    }
  }
  for (size_t h = 0; h < heads.size(); ++h) {
    for (int b : active) {
      const auto& seq = heads[h].seq;
      if (std::find(seq.begin(), seq.end(), b) != seq.end()) continue;
      std::vector<int> full = seq;
      full.push_back(b);
      if (route_seen.insert(full).second) {
        routes.push_back({static_cast<int>(h), b});
      }
    }
  }

  // Deterministic head signals: LoS prefixes and LoS first hops.
  std::map<std::pair<int, int>, RankOne> los_links;
  auto link = [&](int from, int to) -> const RankOne& {
    auto it = los_links.find({from, to});
    if (it == los_links.end()) {
      it = los_links.emplace(std::make_pair(from, to), los_rank_one(s, from, to))
               .first;
    }
    return it->second;
  };
  // head_signal[h][tx]: reflected vector leaving the last IRS of the head.
  std::vector<std::vector<ComplexVector>> head_signal(
      heads.size(), std::vector<ComplexVector>(n_tx));
  std::vector<char> head_random(heads.size(), 0);
  for (size_t h = 0; h < heads.size(); ++h) {
    const Head& hd = heads[h];
    const int first = hd.seq.front();
    if (!los(0, first)) {
      head_random[h] = 1;
      continue;
    }
    for (int t = 0; t < n_tx; ++t) {
      ComplexVector x = link(0, first).apply(w[t]);
      x = theta.at(first).cwiseProduct(x);
      for (size_t n = 1; n < hd.seq.size(); ++n) {
        x = link(hd.seq[n - 1], hd.seq[n]).apply(x);
        x = theta.at(hd.seq[n]).cwiseProduct(x);
      }
      head_signal[h][t] = x;
    }
  }

  const size_t n_alpha = alphas.size();
  std::vector<double> overall(n_alpha, 0.0);
  std::vector<double> interference(n_alpha, 0.0);

  for (int rz = 0; rz < realizations; ++rz) {
    const std::uint64_t rz_seed =
        derive_seed(seed, {static_cast<std::uint64_t>(rz)});

    // final_row[a]: IRS a -> victim channel as a column; rho[a] folds in
    // a's beam for signals incident on a.
    std::map<int, ComplexVector> final_row;
    std::map<int, ComplexVector> rho;
    std::map<int, Fading> rho_fading;
    for (int a : active) {
      ComplexVector row;
      Fading f;
      if (los(a, vk)) {
        const RankOne& r1 = link(a, vk);
        row = r1.c * r1.tx.conjugate();
      } else {
        row = rayleigh_unit_channel(s, a, vk, rz_seed).transpose();
        f = {1, std::log(s.distance(a, vk))};
      }
      final_row[a] = row;
      rho[a] = row.cwiseProduct(theta.at(a));
      rho_fading[a] = f;
    }

    // tail[(a,b)]: contribution of a -> b -> victim is tail^T y_a.
    std::map<std::pair<int, int>, ComplexVector> tail;
    std::map<std::pair<int, int>, Fading> tail_fading;
    for (size_t x = 0; x < active.size(); ++x) {
      for (size_t y = x + 1; y < active.size(); ++y) {
        const int lo = active[x];
        const int hi = active[y];
        if (los(lo, hi)) {
          for (auto [a, b] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
            const RankOne& r1 = link(a, b);
            const Complex gain = (rho.at(b).transpose() * r1.rx)(0);
            tail[{a, b}] = r1.c * gain * r1.tx.conjugate();
            tail_fading[{a, b}] = rho_fading.at(b);
          }
          continue;
        }
        const auto [left, right] = project_iid(
            rho.at(hi), rho.at(lo),
            derive_seed(rz_seed,
                        {3, static_cast<std::uint64_t>(lo),
                         static_cast<std::uint64_t>(hi),
                         static_cast<std::uint64_t>(vk)}));
        const Fading hop{1, std::log(s.distance(lo, hi))};
        tail[{lo, hi}] = left;
        tail_fading[{lo, hi}] = hop + rho_fading.at(hi);
        tail[{hi, lo}] = right;
        tail_fading[{hi, lo}] = hop + rho_fading.at(lo);
      }
    }

    // Random first hops from the BS.
    std::map<int, ComplexMatrix> bs_fading;
    for (int a : active) {
      if (!los(0, a)) bs_fading[a] = rayleigh_unit_channel(s, 0, a, rz_seed);
    }

    for (int t = 0; t < n_tx; ++t) {
      std::vector<Complex> sum(n_alpha, Complex(0.0));
      for (const Route& r : routes) {
        const Head& hd = heads[r.head];
        ComplexVector y;
        Fading f;
        if (head_random[r.head]) {
          const int a = hd.seq.front();
          y = theta.at(a).cwiseProduct(bs_fading.at(a) * w[t]);
          f = {1, std::log(s.distance(0, a))};
        } else {
          y = head_signal[r.head][t];
        }
        const int last = hd.seq.back();
        Complex value;
        if (r.tail < 0) {
          value = (final_row.at(last).transpose() * y)(0);
          f = f + rho_fading.at(last);
        } else {
          value = (tail.at({last, r.tail}).transpose() * y)(0);
          f = f + tail_fading.at({last, r.tail});
        }
        for (size_t ai = 0; ai < n_alpha; ++ai) {
          sum[ai] += value * f.scale(s.beta, alphas[ai]);
        }
      }
      for (size_t ai = 0; ai < n_alpha; ++ai) {
        if (t == own_tx) {
          overall[ai] += std::norm(sum[ai]);
        } else {
          interference[ai] += std::norm(sum[ai]);
        }
      }
    }
  }
  for (size_t ai = 0; ai < n_alpha; ++ai) {
    report.overall.push_back(overall[ai] / realizations);
    report.interference.push_back(interference[ai] / realizations);
  }
  return report;
}

double interference_power(const Scenario& s, const RoutingSolution& solution,
                          int victim, std::uint64_t seed, int realizations) {
  return evaluate_scatter(s, solution, victim, {s.alpha}, seed, realizations)
      .interference.front();
}

double overall_gain_with_scatter(const Scenario& s,
                                 const RoutingSolution& solution, int victim,
                                 std::uint64_t seed, int realizations) {
  return evaluate_scatter(s, solution, victim, {s.alpha}, seed, realizations)
      .overall.front();
}

FavorableReport favorable_propagation(const Scenario& s,
                                      const RoutingSolution& solution) {
  const LosMap los = compute_los_map(s);
  FavorableReport out;
  std::vector<int> firsts;
  std::vector<ComplexVector> beams;
  for (const UserRoute& r : solution.routes) {
    firsts.push_back(r.nodes.at(1));
    beams.push_back(active_beam(s, los, r.nodes.at(1), solution.mode).w);
  }
  const double n_b = static_cast<double>(s.n_b);
  for (size_t a = 0; a < firsts.size(); ++a) {
    const ComplexVector h = bs_response_toward(s, firsts[a]);
    out.own.push_back({firsts[a], firsts[a], std::norm(h.dot(beams[a])) / n_b});
    for (size_t b = 0; b < firsts.size(); ++b) {
      if (a == b || firsts[a] == firsts[b]) continue;
      out.leakage.push_back(
          {firsts[a], firsts[b], std::norm(h.dot(beams[b])) / n_b});
    }
  }
  return out;
}

}  // namespace irsroute
