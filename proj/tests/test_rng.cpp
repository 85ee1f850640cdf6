#include "ambc/rng.hpp"

#include <stdexcept>
#include <vector>

#include "checks.hpp"

using ambc::RandomStream;

int main() {
  // Same seed and tags give the same sequence; any tag change breaks it.
  {
    auto a = RandomStream::derive(42, {7, 3, 1});
    auto b = RandomStream::derive(42, {7, 3, 1});
    auto c = RandomStream::derive(42, {7, 3, 2});
    bool same = true, diff = false;
    for (int i = 0; i < 64; ++i) {
      const auto va = a.next_u64();
      same = same && va == b.next_u64();
      diff = diff || va != c.next_u64();
    }
    CHECK(same);
    CHECK(diff);
  }

  // Uniform moments.
  {
    auto r = RandomStream::derive(1, {1});
    std::vector<double> u(100000);
    for (auto& x : u) x = r.next_double();
    CHECK_NEAR(checks::mean(u), 0.5, 0.005);
    CHECK_NEAR(checks::variance(u), 1.0 / 12.0, 0.002);
    for (double x : u) {
      if (x < 0.0 || x >= 1.0) {
        CHECK(false);
        break;
      }
    }
  }

  // Normal moments, via pairs.
  {
    auto r = RandomStream::derive(2, {1});
    std::vector<double> z(200000);
    for (std::size_t i = 0; i < z.size(); i += 2) {
      r.next_normal_pair(z[i], z[i + 1]);
    }
    CHECK_NEAR(checks::mean(z), 0.0, 0.01);
    CHECK_NEAR(checks::variance(z), 1.0, 0.02);
    double fourth = 0.0;
    for (double x : z) fourth += x * x * x * x;
    CHECK_NEAR(fourth / double(z.size()), 3.0, 0.1);
  }

  // Complex normal: E|z|^2 = variance, real/imag uncorrelated.
  {
    auto r = RandomStream::derive(3, {1});
    const double target = 2.5;
    std::vector<double> re(100000), im(100000);
    double power = 0.0;
    for (std::size_t i = 0; i < re.size(); ++i) {
      const auto z = r.next_cnormal(target);
      re[i] = z.real();
      im[i] = z.imag();
      power += std::norm(z);
    }
    CHECK_NEAR(power / double(re.size()), target, 0.05);
    CHECK(std::abs(checks::pearson(re, im)) < 0.02);
  }

  // Gamma moments: mean = shape*scale, variance = shape*scale^2.
  {
    auto r = RandomStream::derive(4, {1});
    std::vector<double> g(200000);
    for (auto& x : g) x = r.next_gamma(5.0, 2.0);
    CHECK_NEAR(checks::mean(g), 10.0, 0.05);
    CHECK_NEAR(checks::variance(g), 20.0, 0.5);
  }

  // Fair coin.
  {
    auto r = RandomStream::derive(5, {1});
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) s += r.next_pm1();
    CHECK(std::abs(s) < 1000.0);
  }

  // Derived substreams look independent.
  {
    auto a = RandomStream::derive(6, {10, 0});
    auto b = RandomStream::derive(6, {10, 1});
    std::vector<double> x(100000), y(100000);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = a.next_double();
      y[i] = b.next_double();
    }
    CHECK(std::abs(checks::pearson(x, y)) < 0.02);
  }

  return checks::summary("test_rng");
}
