#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "natop/group_ring.hpp"
#include "natop/leading_term.hpp"
#include "natop/perm.hpp"
#include "natop/prng.hpp"
#include "natop/young.hpp"

using namespace natop;

namespace {

Perm random_perm(int n, Prng& rng) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(i + 1)]);
  return Perm(v);
}

// independent oracle: filter the whole symmetric group
std::vector<Perm> unshuffles_by_filter(int p, int q) {
  std::vector<Perm> out;
  for (const Perm& s : symmetric_group(p + q)) {
    bool ok = true;
    for (int i = 1; i < p; ++i)
      if (s(i) > s(i + 1)) ok = false;
    for (int i = p + 1; i < p + q; ++i)
      if (s(i) > s(i + 1)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

// independent oracle: count standard Young tableaux by direct enumeration
long count_syt(const std::vector<int>& rows) {
  int n = 0;
  for (int r : rows) n += r;
  std::vector<int> fill(rows.size(), 0);
  std::function<long(int)> rec = [&](int next) -> long {
    if (next > n) return 1;
    long total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (fill[i] >= rows[i]) continue;
      if (i > 0 && fill[i] >= fill[i - 1]) continue;
      ++fill[i];
      total += rec(next + 1);
      --fill[i];
    }
    return total;
  };
  return rec(1);
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int a = std::min(rest, cap); a >= 1; --a) {
      cur.push_back(a);
      rec(rest - a, a);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace

TEST_CASE("unshuffle enumeration") {
  CHECK(unshuffles(0, 2).size() == 1);
  CHECK(unshuffles(0, 2)[0].is_identity());

  // derived: enumerate all of S_3 and filter
  auto got = unshuffles(1, 2);
  auto expect = unshuffles_by_filter(1, 2);
  REQUIRE(got.size() == expect.size());
  CHECK(got.size() == 3);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);

  for (int n = 3; n <= 8; ++n)
    CHECK(static_cast<int>(unshuffles(n - 2, 2).size()) == n * (n - 1) / 2);

  // lexicographic order
  auto u = unshuffles(2, 2);
  for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i - 1] < u[i]);
}

TEST_CASE("permutation algebra") {
  Prng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));
    Perm a = random_perm(n, rng), b = random_perm(n, rng), c = random_perm(n, rng);
    CHECK(a.then(b).then(c) == a.then(b.then(c)));
    CHECK(a.then(a.inverse()).is_identity());
    CHECK(a.inverse().then(a).is_identity());
    CHECK(a.sign() * b.sign() == a.then(b).sign());
  }
}

TEST_CASE("group ring is a ring with the diagrammatic product") {
  GroupRingElem x = GroupRingElem::single(Perm::transposition(3, 1, 2)) +
                    GroupRingElem::single(Perm::cycle(3, {1, 2, 3}), Rat(2));
  GroupRingElem y = GroupRingElem::single(Perm::identity(3), Rat(-1)) +
                    GroupRingElem::single(Perm::transposition(3, 2, 3));
  GroupRingElem z = GroupRingElem::single(Perm::cycle(3, {1, 3, 2}), rat(1, 2));
  CHECK((x * y) * z == x * (y * z));
  CHECK(x * GroupRingElem::unit(3) == x);
  CHECK(GroupRingElem::unit(3) * x == x);
  CHECK((x - x).is_zero());
}

TEST_CASE("theta and kernel membership") {
  // single generator has theta -1
  LeadingTerm gen = LeadingTerm::of(Perm::identity(4));
  CHECK(gen.theta() == Rat(-1));

  for (int n = 3; n <= 6; ++n) {
    CHECK(LeadingTerm::curvature_type(n).theta() == 0);
    CHECK(LeadingTerm::normal_type(n).theta() == 0);
  }

  // K(2) = 0: E0(2) is one-dimensional and theta is injective there
  LeadingTerm e2 = LeadingTerm::of(Perm::identity(2));
  CHECK(unshuffles(0, 2).size() == 1);
  CHECK(e2.theta() != 0);
}

TEST_CASE("right action on the induced module") {
  Prng rng(11);
  for (int n = 3; n <= 6; ++n) {
    LeadingTerm x = LeadingTerm::curvature_type(n);
    CHECK(x.act(Perm::identity(n)) == x);
    for (int t = 0; t < 20; ++t) {
      Perm g = random_perm(n, rng), h = random_perm(n, rng);
      CHECK(x.act(g).act(h) == x.act(g.then(h)));
    }
    // orbit sums are fixed by every group element
    LeadingTerm orbit(n);
    for (const Perm& g : symmetric_group(n)) orbit = orbit + x.act(g);
    for (int t = 0; t < 5; ++t) {
      Perm g = random_perm(n, rng);
      CHECK(orbit.act(g) == orbit);
    }
  }
}

TEST_CASE("two-column decomposition dimensions") {
  auto d3 = two_column_decomposition(3);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].first.rows() == std::vector<int>{2, 1});
  CHECK(d3[0].second == 2);  // hook lengths 3,1,1 -> 3!/3 = 2

  auto d4 = two_column_decomposition(4);
  REQUIRE(d4.size() == 2);
  CHECK(d4[0].first.rows() == std::vector<int>{2, 2});
  CHECK(d4[0].second == 2);
  CHECK(d4[1].first.rows() == std::vector<int>{3, 1});
  CHECK(d4[1].second == 3);

  // hook-length dimensions against direct tableau enumeration, and the
  // kernel-dimension identity
  for (int n = 3; n <= 7; ++n) {
    Int sum(0);
    for (const auto& [d, dim] : two_column_decomposition(n)) {
      CHECK(dim == count_syt(d.rows()));
      sum += dim;
    }
    CHECK(sum == n * (n - 1) / 2 - 1);
  }
}

TEST_CASE("young symmetrizers: quasi-idempotent, mutually annihilating") {
  for (int n : {3, 4, 5}) {
    auto dec = two_column_decomposition(n);
    std::vector<GroupRingElem> cs;
    for (const auto& [d, dim] : dec) cs.push_back(young_symmetrizer(d, n));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      GroupRingElem sq = cs[i] * cs[i];
      // c^2 = eta c with eta = n! / dim
      Int fact(1);
      for (int k = 2; k <= n; ++k) fact *= k;
      Rat eta(fact, dec[i].second);
      CHECK(sq == cs[i] * eta);
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (i != j) CHECK((cs[i] * cs[j]).is_zero());
    }
  }
}

TEST_CASE("central idempotents resolve the identity") {
  for (int n : {3, 4}) {
    GroupRingElem sum(n);
    for (const auto& rows : partitions(n)) {
      GroupRingElem z = central_idempotent(YoungDiagram(rows), n);
      CHECK(z * z == z);
      sum = sum + z;
    }
    CHECK(sum == GroupRingElem::unit(n));
  }
}

TEST_CASE("generator test for the preferred leading terms") {
  for (int n = 3; n <= 5; ++n) {
    CHECK(is_generator(LeadingTerm::curvature_type(n)));
    CHECK(is_generator(LeadingTerm::normal_type(n)));
  }
  CHECK_FALSE(is_generator(LeadingTerm(4)));  // zero element

  // zeroing one isotypic projection destroys generation
  for (int n = 4; n <= 5; ++n) {
    LeadingTerm x = LeadingTerm::curvature_type(n);
    auto dec = two_column_decomposition(n);
    GroupRingElem kill = GroupRingElem::unit(n) - central_idempotent(dec[0].first, n);
    LeadingTerm crippled = x.act(kill);
    CHECK(crippled.in_kernel());
    CHECK_FALSE(crippled.is_zero());
    CHECK_FALSE(is_generator(crippled));
  }

  // not in kernel -> error
  CHECK_THROWS(is_generator(LeadingTerm::of(Perm::identity(4))));
}

TEST_CASE("projector ranks match the decomposition, higher shapes vanish") {
  for (int n : {4, 5, 6}) {
    // kernel basis inside E0(n): differences of consecutive unshuffles
    auto ush = unshuffles(n - 2, 2);
    std::vector<LeadingTerm> kb;
    for (std::size_t i = 1; i < ush.size(); ++i)
      kb.push_back(LeadingTerm::of(ush[0]) - LeadingTerm::of(ush[i]));
    for (const auto& [d, dim] : two_column_decomposition(n)) {
      GroupRingElem z = central_idempotent(d, n);
      bool any = false;
      for (const auto& x : kb)
        if (!x.act(z).is_zero()) any = true;
      CHECK(any);
    }
    if (n == 6) {
      GroupRingElem z33 = central_idempotent(YoungDiagram({3, 3}), 6);
      for (const auto& x : kb) CHECK(x.act(z33).is_zero());
    }
  }
}
