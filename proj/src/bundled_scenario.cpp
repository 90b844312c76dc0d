#include <cmath>
#include <random>

#include "irsroute/scene.hpp"

namespace irsroute {

namespace {

Vec3 horizontal(double degrees) {
  const double r = degrees * kPi / 180.0;
  return Vec3(std::cos(r), std::sin(r), 0.0);
}

// Point at horizontal range r from a BS at the origin whose direction cosine
// along the BS array axis is k / 16.
Vec3 on_bs_grid(int k, double r, double z) {
  const double c = k / 16.0;
  return Vec3(r * c, r * std::sqrt(1.0 - c * c), z);
}

}  // namespace

Scenario bundled_scenario() {
  Scenario s;
  s.lambda = 0.06;
  s.beta = free_space_beta(s.lambda);
  s.d_a = s.lambda / 2.0;
  s.d_i = s.lambda / 4.0;
  s.n_b = 32;
  s.m1 = s.m2 = 24;
  s.b1 = s.b2 = 7;
  s.d0 = 2.5;
  s.los_threshold = 5.0;
  s.alpha = 2.5;

  const double h = 2.5;
  s.nodes.push_back({0, NodeKind::kBs, Vec3(0.0, 0.0, h), Vec3::UnitY()});
  // IRSs seen from the BS sit on its DFT beam grid so first-hop leakage
  // between users vanishes.
  const struct {
    Vec3 position;
    double facing_deg;
  } irs[] = {
      {on_bs_grid(-15, 4.5, h), -110.1},  // 1
      {Vec3(-8.2, 3.0, h), 61.5},         // 2
      {on_bs_grid(-8, 4.5, h), -135.0},   // 3
      {Vec3(-5.97, 6.05, h), 51.5},       // 4
      {on_bs_grid(3, 4.5, h), -175.0},    // 5
      {Vec3(-0.8, 8.93, h), -16.0},       // 6
      {Vec3(5.44, 5.93, h), -35.7},       // 7
      {Vec3(2.39, 6.65, h), 6.9},         // 8
      {Vec3(-9.5, 7.0, h), -107.6},       // 9
      {Vec3(-9.3, 9.6, h), -82.6},        // 10
      {Vec3(8.5, 4.0, h), 118.9},         // 11
      {Vec3(-3.5, 9.5, h), -160.3},       // 12
      {on_bs_grid(12, 4.5, h), 138.0},    // 13
  };
  int id = 1;
  for (const auto& p : irs) {
    s.nodes.push_back({id++, NodeKind::kIrs, p.position, horizontal(p.facing_deg)});
  }
  const Vec3 users[] = {Vec3(-11.5, 5.5, 1.5), Vec3(-6.5, 10.3, 1.5),
                        Vec3(2.5, 11.5, 1.5), Vec3(8.5, 8.0, 1.5)};
  for (const Vec3& u : users) {
    s.nodes.push_back({id++, NodeKind::kUser, u, Vec3::UnitY()});
  }
  return s;
}

Scenario random_scenario(const RandomScenarioParams& params,
                         std::uint64_t seed) {
  if (params.num_irs < 0 || params.num_users < 0 || !(params.box > 0.0) ||
      !(params.height > 0.0) || !(params.los_threshold > 0.0)) {
    throw ScenarioError("random scenario parameters out of range");
  }
  Scenario s;
  s.beta = free_space_beta(s.lambda);
  s.n_b = params.n_b;
  s.m1 = s.m2 = params.m0;
  s.b1 = s.b2 = params.b0;
  s.los_threshold = params.los_threshold;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const double top = params.height;
  const double thr = params.los_threshold;
  const double step_lo = std::max(s.d0, 0.45 * thr);
  const double step_hi = std::max(step_lo, 0.8 * thr);

  // Users sit in separate angular sectors in front of the BS; each is fed
  // by a zig-zag chain of IRSs facing the bisector of their two neighbours.
  // Leftover IRSs are scattered at random.
  std::vector<Vec3> irs_pos;
  std::vector<Vec3> irs_facing;
  std::vector<Vec3> user_pos;
  const Vec3 bs(0.0, 0.0, top);
  auto far_enough = [&](const Vec3& p) {
    if ((p - bs).norm() < s.d0) return false;
    for (const Vec3& q : irs_pos) {
      if ((p - q).norm() < s.d0) return false;
    }
    for (const Vec3& q : user_pos) {
      if ((p - q).norm() < s.d0) return false;
    }
    return true;
  };
  auto flat_unit = [](Vec3 v) {
    v.z() = 0.0;
    return v.normalized();
  };
  auto heading = [](double a) { return Vec3(std::cos(a), std::sin(a), 0.0); };

  // A chain that cannot be placed restarts the whole layout.
  int remaining = 0;
  const int k_count = params.num_users;
  bool complete = false;
  for (int restart = 0; restart < 50 && !complete; ++restart) {
    irs_pos.clear();
    irs_facing.clear();
    user_pos.clear();
    remaining = params.num_irs;
    complete = true;
    for (int k = 0; k < k_count && complete; ++k) {
      const int chain = std::min(remaining, 1 + static_cast<int>(rng() % 3));
      remaining -= chain;
      const double width = kPi * 5.0 / 6.0 / k_count;
      const double center = kPi / 12.0 + width * (k + 0.5);
      bool placed = false;
      for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
        const double axis = center + uniform(-0.25, 0.25) * width;
        std::vector<Vec3> pts{bs};
        double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
        bool ok = true;
        for (int t = 0; t <= chain && ok; ++t) {
          const bool user = t == chain;
          const double z = user ? uniform(0.25 * top, 0.6 * top)
                                : uniform(0.5 * top, top);
          const double turn = chain == 0 ? 0.0
                              : t == 0   ? sign * uniform(0.1, 0.35)
                                         : sign * uniform(0.6, 1.1);
          sign = -sign;
          Vec3 p = pts.back() + uniform(step_lo, step_hi) * heading(axis + turn);
          p.z() = z;
          if ((p - pts.back()).norm() > thr) ok = false;
          for (const Vec3& q : pts) {
            if ((p - q).norm() < s.d0) ok = false;
          }
          if (!far_enough(p)) ok = false;
          pts.push_back(p);
        }
        if (!ok) continue;
        for (int t = 1; t <= chain; ++t) {
          const Vec3 f = flat_unit(pts[t - 1] - pts[t]) +
                         flat_unit(pts[t + 1] - pts[t]);
          const double jitter = uniform(-0.15, 0.15);
          const Vec3 n = f.normalized();
          irs_pos.push_back(pts[t]);
          irs_facing.push_back((std::cos(jitter) * n +
                                std::sin(jitter) * Vec3::UnitZ().cross(n))
                                   .normalized());
        }
        user_pos.push_back(pts.back());
        placed = true;
      }
      complete = placed;
    }
  }
  if (!complete) {
    throw ScenarioError("could not place the user chains; adjust the parameters");
  }
  const double radius = std::min(params.box, 2.0 * thr);
  for (int j = 0; j < remaining; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      const double r = uniform(s.d0, radius);
      const Vec3 p = bs + r * heading(uniform(0.0, kPi)) +
                     Vec3(0.0, 0.0, uniform(-0.5 * top, 0.0));
      if (!far_enough(p)) continue;
      const Vec3 f = flat_unit(bs - p) + heading(uniform(0.0, 2.0 * kPi));
      irs_pos.push_back(p);
      irs_facing.push_back(f.norm() < 1e-6 ? flat_unit(bs - p) : flat_unit(f));
      placed = true;
    }
    if (!placed) throw ScenarioError("could not place an IRS; enlarge the box");
  }

  s.nodes.push_back({0, NodeKind::kBs, bs, Vec3::UnitY()});
  int id = 1;
  for (size_t j = 0; j < irs_pos.size(); ++j) {
    s.nodes.push_back({id++, NodeKind::kIrs, irs_pos[j], irs_facing[j]});
  }
  for (const Vec3& u : user_pos) {
    s.nodes.push_back({id++, NodeKind::kUser, u, Vec3::UnitY()});
  }
  s.validate();
  return s;
}

}  // namespace irsroute
