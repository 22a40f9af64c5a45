#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "check_errc.hpp"
#include "iiot/simd/minplus.hpp"

using namespace iiot::simd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Case {
  std::size_t m;
  std::vector<double> prev, w;
};

Case random_case(std::mt19937_64& g, std::size_t m, bool integral) {
  std::uniform_real_distribution<double> u(-50, 50);
  std::uniform_int_distribution<int> ui(0, 6);
  std::bernoulli_distribution missing(0.3);
  Case c{m, std::vector<double>(m), std::vector<double>(m * m)};
  for (auto& x : c.prev) x = missing(g) ? kInf : (integral ? ui(g) : u(g));
  for (auto& x : c.w) x = missing(g) ? kInf : (integral ? ui(g) : u(g));
  return c;
}

void reference(const Case& c, std::vector<double>& next, std::vector<std::int64_t>& pred) {
  for (std::size_t j = 0; j < c.m; ++j) {
    next[j] = kInf;
    pred[j] = -1;
    for (std::size_t i = 0; i < c.m; ++i) {
      const double v = c.prev[i] + c.w[i * c.m + j];
      if (v < next[j]) {
        next[j] = v;
        pred[j] = static_cast<std::int64_t>(i);
      }
    }
  }
}

}  // namespace

TEST_CASE("scalar kernel follows the definition") {
  std::mt19937_64 g(8);
  for (std::size_t m = 1; m <= 20; ++m) {
    for (bool integral : {false, true}) {
      const auto c = random_case(g, m, integral);
      std::vector<double> n1(m), n2(m);
      std::vector<std::int64_t> p1(m), p2(m);
      minplus_relax_scalar(c.prev, c.w, n1, p1);
      reference(c, n2, p2);
      CHECK(n1 == n2);
      CHECK(p1 == p2);
    }
  }
}

TEST_CASE("all-infinite input leaves no predecessor") {
  const std::vector<double> prev(3, kInf), w(9, 1.0);
  std::vector<double> next(3);
  std::vector<std::int64_t> pred(3);
  minplus_relax_scalar(prev, w, next, pred);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(next[j] == kInf);
    CHECK(pred[j] == -1);
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("AVX2 kernel is bit-identical to the scalar kernel") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    CHECK_ERRC(set_backend(Backend::Avx2), iiot::Errc::PreconditionViolated);
    return;
  }
  std::mt19937_64 g(13);
  // Sizes around the 4-lane width and its remainders; integer weights force ties.
  for (std::size_t m = 1; m <= 40; ++m)
    for (int rep = 0; rep < 10; ++rep)
      for (bool integral : {false, true}) {
        const auto c = random_case(g, m, integral);
        std::vector<double> ns(m), nv(m);
        std::vector<std::int64_t> ps(m), pv(m);
        minplus_relax_scalar(c.prev, c.w, ns, ps);
        minplus_relax_avx2(c.prev, c.w, nv, pv);
        CHECK(std::memcmp(ns.data(), nv.data(), m * sizeof(double)) == 0);
        CHECK(ps == pv);
      }
}
#endif

TEST_CASE("backend selection") {
  const Backend initial = active_backend();
  set_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(to_string(Backend::Scalar) == "scalar");
  CHECK(to_string(Backend::Avx2) == "avx2");

  std::mt19937_64 g(3);
  const auto c = random_case(g, 7, true);
  std::vector<double> n1(7), n2(7);
  std::vector<std::int64_t> p1(7), p2(7);
  minplus_relax(c.prev, c.w, n1, p1);
  if (avx2_available()) set_backend(Backend::Avx2);
  minplus_relax(c.prev, c.w, n2, p2);
  CHECK(n1 == n2);
  CHECK(p1 == p2);
  set_backend(initial);
}
