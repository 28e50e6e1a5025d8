#include <doctest.h>

#include <random>

#include "backbone/measures.hpp"
#include "helpers.hpp"

using namespace backbone;
using namespace testutil;

namespace {

const SearchStrategy kExact = ExactStrategy{};

void check_atoms(const std::vector<double>& got,
                 const std::vector<double>& want, double eps = 1e-9) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(eps).scale(1.0));
}

}  // namespace

TEST_CASE("local entropy backbone of XOR and AND") {
  const BackboneSpectrum x = entropy_backbone_local(
      xor_distribution(), {0, 0, 0}, AggregatorKind::Min, kExact);
  check_atoms(x.alpha_synergy, {0, 1, 2});
  check_atoms(x.partial_atoms, {0, 1, 1});

  const BackboneSpectrum a = entropy_backbone_local(
      and_distribution(), {1, 1, 1}, AggregatorKind::Min, kExact);
  check_atoms(a.alpha_synergy, {0, 0, 2});
  check_atoms(a.partial_atoms, {0, 0, 2});

  const JointDistribution point =
      JointDistribution::from_entries({"a", "b"}, {2, 2}, {{{1, 0}, 1.0}});
  const BackboneSpectrum p =
      entropy_backbone_local(point, {1, 0}, AggregatorKind::Min, kExact);
  check_atoms(p.alpha_synergy, {0, 0});
  check_atoms(p.partial_atoms, {0, 0});
}

TEST_CASE("expected entropy backbone") {
  const BackboneSpectrum x = entropy_backbone_expected(
      xor_distribution(), AggregatorKind::Min, kExact);
  check_atoms(x.partial_atoms, {0, 1, 1});
  double sum = 0;
  for (double a : x.partial_atoms) sum += a;
  CHECK(sum == doctest::Approx(expected_entropy(xor_distribution())).epsilon(1e-9));

  check_atoms(entropy_backbone_expected(independent_bits(3),
                                        AggregatorKind::Min, kExact)
                  .partial_atoms,
              {1, 1, 1});
  check_atoms(entropy_backbone_expected(copy_system(3), AggregatorKind::Min,
                                        kExact)
                  .partial_atoms,
              {0, 0, 1});
}

TEST_CASE("KL backbone of identical distributions is zero") {
  const JointDistribution d = and_distribution();
  const DivergenceSpectrum s =
      kl_backbone(d, d, AggregatorKind::Min, kExact);
  check_atoms(s.atoms, {0, 0, 0});
  CHECK(s.total == doctest::Approx(0.0));
}

TEST_CASE("XOR vs uniform prior gives atoms (1,0,0)") {
  const JointDistribution d = xor_distribution();
  const DivergenceSpectrum s =
      kl_backbone(d, d.uniform_like(), AggregatorKind::Min, kExact);
  check_atoms(s.atoms, {1, 0, 0});
  CHECK(s.total == doctest::Approx(1.0));
}

TEST_CASE("AND state (1,1,1) vs uniform prior gives (1,1,-1)") {
  const JointDistribution d = and_distribution();
  const DivergenceSpectrum s = kl_backbone_local(
      d, d.uniform_like(), {1, 1, 1}, AggregatorKind::Min, kExact);
  check_atoms(s.atoms, {1, 1, -1});
}

TEST_CASE("KL requires absolute continuity") {
  const JointDistribution post = xor_distribution();
  const JointDistribution prior = and_distribution();  // misses (0,1,1) etc.
  CHECK_THROWS_AS(kl_backbone(post, prior, AggregatorKind::Min, kExact),
                  std::domain_error);
}

TEST_CASE("negentropy backbone") {
  check_atoms(
      negentropy_backbone(xor_distribution(), AggregatorKind::Min, kExact).atoms,
      {1, 0, 0});
  check_atoms(
      negentropy_backbone(and_distribution(), AggregatorKind::Min, kExact).atoms,
      {1, 0.25, -0.25});
  check_atoms(
      negentropy_backbone(independent_bits(3), AggregatorKind::Min, kExact).atoms,
      {0, 0, 0});
}

TEST_CASE("per-state negentropy of AND matches the table rows") {
  const JointDistribution d = and_distribution();
  for (StateVector s : {StateVector{0, 0, 0}, {0, 1, 0}, {1, 0, 0}}) {
    check_atoms(
        negentropy_backbone_local(d, s, AggregatorKind::Min, kExact).atoms,
        {1, 0, 0});
  }
  check_atoms(
      negentropy_backbone_local(d, {1, 1, 1}, AggregatorKind::Min, kExact).atoms,
      {1, 1, -1});
}

TEST_CASE("total correlation equals negentropy on XOR") {
  const JointDistribution d = xor_distribution();
  const DivergenceSpectrum tc =
      total_correlation_backbone(d, AggregatorKind::Min, kExact);
  const DivergenceSpectrum neg =
      negentropy_backbone(d, AggregatorKind::Min, kExact);
  check_atoms(tc.atoms, neg.atoms);
  CHECK(tc.total == doctest::Approx(neg.total).epsilon(1e-12));
}

TEST_CASE("total correlation of a product distribution is zero") {
  const DivergenceSpectrum s = total_correlation_backbone(
      independent_bits(3), AggregatorKind::Min, kExact);
  check_atoms(s.atoms, {0, 0, 0});
  CHECK(s.total == doctest::Approx(0.0));
}

TEST_CASE("total correlation of the 2-variable copy is 1 bit") {
  const JointDistribution d = copy_system(2);
  const DivergenceSpectrum s =
      total_correlation_backbone(d, AggregatorKind::Min, kExact);
  CHECK(s.total == doctest::Approx(1.0));
  double sum = 0;
  for (double a : s.atoms) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("MI backbone of the XOR sources onto the target") {
  const JointDistribution d = xor_distribution();
  const DivergenceSpectrum cond = mi_backbone(
      d, 2, MiFormulation::Conditional, AggregatorKind::Min, kExact);
  check_atoms(cond.atoms, {1, 0});
  CHECK(cond.total == doctest::Approx(1.0));

  const DivergenceSpectrum joint =
      mi_backbone(d, 2, MiFormulation::Joint, AggregatorKind::Min, kExact);
  REQUIRE(joint.atoms.size() == 3);
  double sum = 0;
  for (double a : joint.atoms) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(joint.total == doctest::Approx(cond.total).epsilon(1e-9));
}

TEST_CASE("MI of an independent target is zero") {
  const JointDistribution d = independent_bits(3);
  const DivergenceSpectrum s = mi_backbone(
      d, 2, MiFormulation::Conditional, AggregatorKind::Min, kExact);
  check_atoms(s.atoms, {0, 0});
  CHECK(s.total == doctest::Approx(0.0));
}

TEST_CASE("degenerate target yields an all-zero flagged spectrum") {
  const JointDistribution d = JointDistribution::from_entries(
      {"a", "b", "y"}, {2, 2, 2},
      {{{0, 0, 0}, 0.25}, {{0, 1, 0}, 0.25}, {{1, 0, 0}, 0.25}, {{1, 1, 0}, 0.25}});
  const DivergenceSpectrum cond = mi_backbone(
      d, 2, MiFormulation::Conditional, AggregatorKind::Min, kExact);
  CHECK(cond.degenerate_target);
  check_atoms(cond.atoms, {0, 0});
  const DivergenceSpectrum joint =
      mi_backbone(d, 2, MiFormulation::Joint, AggregatorKind::Min, kExact);
  CHECK(joint.degenerate_target);
  check_atoms(joint.atoms, {0, 0, 0});
}

TEST_CASE("randomized sum identities across all measures") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 4);  // 2..5
    const JointDistribution d = random_distribution(rng, k, 3);

    const BackboneSpectrum h =
        entropy_backbone_expected(d, AggregatorKind::Min, kExact);
    double sum = 0;
    for (double a : h.partial_atoms) sum += a;
    CHECK(sum == doctest::Approx(expected_entropy(d)).epsilon(1e-9));

    const DivergenceSpectrum neg =
        negentropy_backbone(d, AggregatorKind::Min, kExact);
    sum = 0;
    for (double a : neg.atoms) sum += a;
    CHECK(sum == doctest::Approx(kl_divergence(d, d.uniform_like())).epsilon(1e-9));

    const DivergenceSpectrum tc =
        total_correlation_backbone(d, AggregatorKind::Min, kExact);
    sum = 0;
    for (double a : tc.atoms) sum += a;
    CHECK(sum ==
          doctest::Approx(kl_divergence(d, d.product_of_marginals())).epsilon(1e-9));

    const int target = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    const DivergenceSpectrum cond = mi_backbone(
        d, target, MiFormulation::Conditional, AggregatorKind::Min, kExact);
    const DivergenceSpectrum joint = mi_backbone(
        d, target, MiFormulation::Joint, AggregatorKind::Min, kExact);
    const double mi = mutual_information(d, target);
    sum = 0;
    for (double a : cond.atoms) sum += a;
    CHECK(sum == doctest::Approx(mi).epsilon(1e-9).scale(1.0));
    sum = 0;
    for (double a : joint.atoms) sum += a;
    CHECK(sum == doctest::Approx(mi).epsilon(1e-9).scale(1.0));
    CHECK(cond.total == doctest::Approx(joint.total).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("divergence constituents are individually non-negative") {
  std::mt19937_64 rng(88);
  const JointDistribution d = random_distribution(rng, 4, 3);
  const DivergenceSpectrum s =
      negentropy_backbone(d, AggregatorKind::Min, kExact);
  for (double a : s.prior_spectrum.partial_atoms) CHECK(a >= -1e-9);
  for (double a : s.posterior_spectrum.partial_atoms) CHECK(a >= -1e-9);
}

TEST_CASE("negentropy equals total correlation when marginals are uniform") {
  // Generalized XOR case: parity distribution over 3 ternary variables.
  std::vector<std::pair<StateVector, double>> entries;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      entries.push_back({{a, b, (6 - a - b) % 3}, 1.0 / 9.0});
  const JointDistribution parity = JointDistribution::from_entries(
      {"a", "b", "c"}, {3, 3, 3}, entries);
  const DivergenceSpectrum neg =
      negentropy_backbone(parity, AggregatorKind::Min, kExact);
  const DivergenceSpectrum tc =
      total_correlation_backbone(parity, AggregatorKind::Min, kExact);
  check_atoms(neg.atoms, tc.atoms);
}
