#include <doctest.h>

#include <numbers>
#include <random>

#include "backbone/distribution.hpp"
#include "backbone/gaussian.hpp"
#include "helpers.hpp"

using namespace backbone;
using namespace testutil;

TEST_CASE("marginalize sums out discarded coordinates") {
  const JointDistribution xordist = xor_distribution();
  const JointDistribution m = xordist.marginalize(SubsetMask::of({0, 1}, 3));
  REQUIRE(m.num_variables() == 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(m.probability({a, b}) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("marginalize with full keep-set is the identity") {
  const JointDistribution d = and_distribution();
  const JointDistribution m = d.marginalize(SubsetMask::full_set(3));
  for (std::uint64_t i = 0; i < d.num_states(); ++i)
    CHECK(m.probability_at(i) == d.probability_at(i));
}

TEST_CASE("AND marginal over the target matches Table-style values") {
  const JointDistribution m =
      and_distribution().marginalize(SubsetMask::of({2}, 3));
  CHECK(m.probability({0}) == doctest::Approx(0.75));
  CHECK(m.probability({1}) == doctest::Approx(0.25));
}

TEST_CASE("empty keep-set yields the trivial distribution") {
  const JointDistribution m =
      xor_distribution().marginalize(SubsetMask::empty_set(3));
  CHECK(m.num_variables() == 0);
  CHECK(m.num_states() == 1);
  CHECK(m.probability_at(0) == doctest::Approx(1.0));
  CHECK(expected_entropy(m) == doctest::Approx(0.0));
}

TEST_CASE("local entropy") {
  CHECK(local_entropy(xor_distribution(), {0, 0, 0}) == doctest::Approx(2.0));
  const JointDistribution point = JointDistribution::from_entries(
      {"a"}, {2}, {{{1}, 1.0}});
  CHECK(local_entropy(point, {1}) == doctest::Approx(0.0));
  CHECK(local_entropy(independent_bits(3), {1, 0, 1}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(local_entropy(point, {0}), std::domain_error);
}

TEST_CASE("local conditional entropy") {
  CHECK(local_conditional_entropy(and_distribution(), {1, 1, 1},
                                  SubsetMask::of({0, 1}, 3)) ==
        doctest::Approx(0.0));
  CHECK(local_conditional_entropy(and_distribution(), {1, 1, 1},
                                  SubsetMask::empty_set(3)) ==
        doctest::Approx(0.0));
  CHECK(local_conditional_entropy(independent_bits(3), {0, 1, 0},
                                  SubsetMask::of({0, 2}, 3)) ==
        doctest::Approx(2.0));
}

TEST_CASE("expected entropy") {
  CHECK(expected_entropy(independent_bits(2)) == doctest::Approx(2.0));
  CHECK(expected_entropy(xor_distribution()) == doctest::Approx(2.0));
  const JointDistribution point =
      JointDistribution::from_entries({"a"}, {3}, {{{2}, 1.0}});
  CHECK(expected_entropy(point) == doctest::Approx(0.0));
}

TEST_CASE("validation rejects malformed distributions") {
  CHECK_THROWS_AS(JointDistribution({"a"}, {2}, {0.5, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution({"a"}, {2}, {1.5, -0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution({"a", "b"}, {2}, {0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("chain identity: h(x) = h(x^a|x^-a) + h(restricted marginal)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const JointDistribution d = random_distribution(rng, 4, 3);
    const StateVector state = d.decode(d.support()[trial % d.support().size()]);
    for (std::uint64_t bits = 0; bits < (1u << 4); ++bits) {
      const SubsetMask failed{bits, 4};
      const SubsetMask keep = failed.complement();
      double h_rest = 0.0;
      if (!keep.empty()) {
        const JointDistribution marg = d.marginalize(keep);
        StateVector restricted;
        for (int i : keep.indices())
          restricted.push_back(state[static_cast<std::size_t>(i)]);
        h_rest = local_entropy(marg, restricted);
      }
      CHECK(local_entropy(d, state) ==
            doctest::Approx(local_conditional_entropy(d, state, failed) + h_rest)
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("nested marginalization commutes") {
  std::mt19937_64 rng(21);
  const JointDistribution d = random_distribution(rng, 5, 3);
  const SubsetMask outer = SubsetMask::of({0, 2, 3, 4}, 5);
  // Keep {0,2,4} of the original = keep {0,1,3} of the outer marginal.
  const JointDistribution two_step =
      d.marginalize(outer).marginalize(SubsetMask::of({0, 1, 3}, 4));
  const JointDistribution one_step = d.marginalize(SubsetMask::of({0, 2, 4}, 5));
  REQUIRE(two_step.num_states() == one_step.num_states());
  for (std::uint64_t i = 0; i < one_step.num_states(); ++i)
    CHECK(two_step.probability_at(i) ==
          doctest::Approx(one_step.probability_at(i)).epsilon(1e-12));
}

TEST_CASE("expected entropy equals the expectation of local entropy") {
  std::mt19937_64 rng(3);
  const JointDistribution d = random_distribution(rng, 4, 4);
  double acc = 0.0;
  for (std::uint64_t idx : d.support())
    acc += d.probability_at(idx) * local_entropy(d, d.decode(idx));
  CHECK(acc == doctest::Approx(expected_entropy(d)).epsilon(1e-9));
}

TEST_CASE("marginal cache agrees with the direct-summation oracle") {
  std::mt19937_64 rng(11);
  const JointDistribution d = random_distribution(rng, 4, 3);
  MarginalCache cache(d);
  const StateVector state = d.decode(d.support().front());
  for (std::uint64_t bits = 1; bits < (1u << 4); ++bits) {
    const SubsetMask keep{bits, 4};
    CHECK(cache.marginal_probability(keep, state) ==
          doctest::Approx(oracle_marginal_prob(d, state, keep)).epsilon(1e-12));
  }
}

TEST_CASE("gaussian local entropy") {
  GaussianModel standard;
  standard.mean = Eigen::VectorXd::Zero(1);
  standard.covariance = Eigen::MatrixXd::Identity(1, 1);
  CHECK(gaussian_local_entropy(standard, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(0.5 * std::log(2.0 * std::numbers::pi)));

  // Variance 1/(2*pi*e) makes the density at the mean exceed 1.
  GaussianModel sharp = standard;
  sharp.covariance(0, 0) = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);
  CHECK(gaussian_local_entropy(sharp, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  GaussianModel iso2;
  iso2.mean = Eigen::VectorXd::Zero(2);
  iso2.covariance = Eigen::MatrixXd::Identity(2, 2);
  CHECK(gaussian_local_entropy(iso2, Eigen::VectorXd::Zero(2)) ==
        doctest::Approx(std::log(2.0 * std::numbers::pi)));

  GaussianModel bad = iso2;
  bad.covariance(0, 0) = -1.0;
  CHECK_THROWS_AS(gaussian_local_entropy(bad, Eigen::VectorXd::Zero(2)),
                  std::domain_error);
}
