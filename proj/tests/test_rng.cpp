#include "doctest.h"

#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "qig/error.hpp"
#include "qig/parallel.hpp"
#include "qig/quadrature.hpp"
#include "qig/rng.hpp"

using namespace qig;

TEST_SUITE("rng") {

// Reference blocks computed independently with numpy.random.Philox.
TEST_CASE("philox4x64-10 known answers") {
  CHECK(philox4x64({0, 0, 0, 0}, {0, 0}) ==
        PhiloxBlock{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL, 0x7e68b68aec7ba23bULL});
  const std::uint64_t ff = ~0ULL;
  CHECK(philox4x64({ff, ff, ff, ff}, {ff, ff}) ==
        PhiloxBlock{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL, 0x9cc7d7c69cd777b6ULL, 0xa09caebf594f0ba0ULL});
  CHECK(philox4x64({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                   {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}) ==
        PhiloxBlock{0xa528f45403e61d95ULL, 0x38c72dbd566e9788ULL, 0xa5a1610e72fd18b5ULL, 0x57bd43b5e52b7fe6ULL});
}

TEST_CASE("stream layout") {
  // Draws 20..23 of stream 7 under seed 12345 come from counter block (5, 0, 7, 0).
  PhiloxStream s(12345, 7);
  for (int i = 0; i < 20; ++i) s.next_u64();
  const PhiloxBlock want{0x29fd32a37991c592ULL, 0xdbb092a551ef8a2cULL, 0xa2af2354c72fcff5ULL, 0xfe29e8e2e2992d59ULL};
  for (int i = 0; i < 4; ++i) CHECK(s.next_u64() == want[i]);
}

TEST_CASE("streams are reproducible and distinct") {
  PhiloxStream a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform doubles") {
  PhiloxStream s(99, 3);
  double sum = 0, lo = 1, hi = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // Mean within 5 sigma of 1/2.
  CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(lo < 1e-3);
  CHECK(hi > 1 - 1e-3);
}

}

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre rules") {
  const auto g = gauss_legendre(5);
  CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  // Exact for degree 2n-1.
  double m8 = 0, m9 = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    m8 += g.weights[i] * std::pow(g.nodes[i], 8);
    m9 += g.weights[i] * std::pow(g.nodes[i], 9);
  }
  CHECK(m8 == doctest::Approx(2.0 / 9).epsilon(1e-14));
  CHECK(std::abs(m9) < 1e-15);
  CHECK(g.nodes[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.nodes[4] == doctest::Approx(std::sqrt(5 + 2 * std::sqrt(10.0 / 7)) / 3).epsilon(1e-14));

  const auto h = gauss_legendre(40, 0.0, std::numbers::pi);
  double s = 0;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) s += h.weights[i] * std::sin(h.nodes[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000001, 0.1);
  CHECK(std::abs(pairwise_sum(v) - 100000.1) < 1e-8);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

}

TEST_SUITE("parallel") {

TEST_CASE("every index visited once for any thread count") {
  for (unsigned t : {1u, 2u, 3u, 7u, 64u}) {
    for (std::size_t n : {0u, 1u, 5u, 1000u}) {
      std::vector<std::atomic<int>> hits(n);
      parallel_for(n, [&](std::size_t i) { hits[i]++; }, t);
      for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
    }
  }
}

TEST_CASE("results do not depend on the partition") {
  const std::size_t n = 4097;
  auto run = [&](unsigned t) {
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = std::sin(0.37 * i) / (1.0 + i); }, t);
    return pairwise_sum(out);
  };
  const double ref = run(1);
  for (unsigned t : {2u, 3u, 5u, 16u}) CHECK(run(t) == ref);
}

TEST_CASE("exceptions propagate") {
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) { if (i == 57) throw DomainError("boom"); }, 4),
                  DomainError);
  CHECK(worker_count() >= 1);
}

}
