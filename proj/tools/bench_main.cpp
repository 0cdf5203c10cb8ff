#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <vector>

#include "hhinv/geometry.hpp"
#include "hhinv/invariant.hpp"
#include "hhinv/parallel.hpp"
#include "hhinv/sphere.hpp"
#include "hhinv/zonal.hpp"

namespace {

using hhinv::par::blocked_sum;
using hhinv::par::blocked_sum_multi;
using hhinv::par::serial_sum;
using hhinv::par::serial_sum_multi;

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report_line(const char* name, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   max|diff| %.3e\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d (cap with HHINV_THREADS)\n", hhinv::par::thread_count());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "blocked", "speedup");

  {
    // single surface integral of an exponential over S^3
    const auto q = hhinv::sphere::build_quadrature(4, 24);
    const std::vector<double> u = {0.3, -0.7, 0.5, 0.2};
    const auto term = [&](std::int64_t i) {
      return q.weights[static_cast<std::size_t>(i)] * std::exp(dot(u, q.node(i)));
    };
    double vs = 0.0, vp = 0.0;
    const double ts = best_ms(3, [&] { vs = serial_sum(q.count(), term); });
    const double tp = best_ms(3, [&] { vp = blocked_sum(q.count(), term); });
    report_line("exp moment (n=4)", ts, tp, std::abs(vs - vp));
  }

  {
    // tensor-product double integral of the zonal block, n = 3
    const auto q = hhinv::sphere::build_quadrature(3, 20);
    const int mdeg = 4;
    const hhinv::zonal::ZonalEvaluator ev(3, mdeg);
    const std::int64_t count = q.count();
    const auto term = [&](std::int64_t idx, double* acc) {
      const std::int64_t i = idx / count, j = idx % count;
      const double w =
          q.weights[static_cast<std::size_t>(i)] * q.weights[static_cast<std::size_t>(j)];
      double zb[8];
      ev.eval_all_unit(dot(q.node(i), q.node(j)),
                       std::span<double>(zb, static_cast<std::size_t>(mdeg) + 1));
      for (int m = 0; m <= mdeg; ++m) acc[m] += w * zb[m];
    };
    std::vector<double> out_s(mdeg + 1), out_p(mdeg + 1);
    const double ts = best_ms(3, [&] { serial_sum_multi(count * count, mdeg + 1, out_s.data(), term); });
    const double tp = best_ms(3, [&] { blocked_sum_multi(count * count, mdeg + 1, out_p.data(), term); });
    double diff = 0.0;
    for (int m = 0; m <= mdeg; ++m) diff = std::max(diff, std::abs(out_s[m] - out_p[m]));
    report_line("zonal pair sum (n=3)", ts, tp, diff);
  }

  {
    // Moebius kernel moments through the axial pair rule, n = 5
    const auto pq = hhinv::sphere::build_pair_quadrature(5, 48, 12);
    const hhinv::geometry::MoebiusMap phi(std::vector<double>{0.5, 0.0, 0.0, 0.0, 0.0});
    std::vector<double> lhs(5);
    const double tp = best_ms(3, [&] { hhinv::invariant::prop7_lhs_all(phi, 4, pq, lhs); });
    std::printf("%-28s %13s %10.1f ms\n", "pair-rule moments (n=5)", "-", tp);
  }

  return 0;
}
