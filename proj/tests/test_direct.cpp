#include <doctest.h>

#include <vector>

#include "gearevo/direct.hpp"
#include "gearevo/rng.hpp"

using namespace gearevo;

namespace {

bool valid_genome(const DirectGenome& g) {
  if (g.genes.size() < 2 || g.genes.size() > 6) return false;
  for (const PlacementStep& s : g.genes) {
    if (s.gear_id < 1 || s.gear_id > 6) return false;
    if (s.placement == Placement::First) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("random genomes are valid with near-uniform lengths") {
  RngStream rng(1);
  std::vector<int> length_counts(7, 0);
  bool saw_linear = false;
  bool saw_coaxial = false;
  for (int i = 0; i < 10000; ++i) {
    const DirectGenome g = random_direct(rng);
    REQUIRE(valid_genome(g));
    ++length_counts[g.genes.size()];
    for (const PlacementStep& s : g.genes) {
      saw_linear = saw_linear || s.placement == Placement::Linear;
      saw_coaxial = saw_coaxial || s.placement == Placement::Coaxial;
    }
  }
  for (int len = 2; len <= 6; ++len) {
    CHECK(length_counts[len] > 1700);
    CHECK(length_counts[len] < 2300);
  }
  CHECK(saw_linear);
  CHECK(saw_coaxial);
}

TEST_CASE("decode is the identity on the gene list") {
  DirectGenome g{{{3, Placement::Linear}, {5, Placement::Coaxial}}};
  CHECK(decode_direct(g) == g.genes);
}

TEST_CASE("zero rates leave the genome untouched") {
  RngStream rng(2);
  const DirectGenome g = random_direct(rng);
  CHECK(mutate_direct(g, rng, {0.0, 0.0, 0.0}) == g);
}

TEST_CASE("insert and erase respect the length bounds") {
  RngStream rng(3);
  DirectGenome two{{{1, Placement::Linear}, {2, Placement::Linear}}};
  DirectGenome six{std::vector<PlacementStep>(6, {4, Placement::Linear})};

  for (int i = 0; i < 200; ++i) {
    CHECK(mutate_direct(two, rng, {0.0, 0.0, 1.0}).genes.size() == 2);
    CHECK(mutate_direct(six, rng, {0.0, 1.0, 0.0}).genes.size() == 6);
    CHECK(mutate_direct(two, rng, {0.0, 1.0, 0.0}).genes.size() == 3);
    CHECK(mutate_direct(six, rng, {0.0, 0.0, 1.0}).genes.size() == 5);
  }
}

TEST_CASE("point mutation keeps genes valid and length fixed") {
  RngStream rng(4);
  for (int i = 0; i < 2000; ++i) {
    const DirectGenome g = random_direct(rng);
    const DirectGenome m = mutate_direct(g, rng, {1.0, 0.0, 0.0});
    CHECK(m.genes.size() == g.genes.size());
    CHECK(valid_genome(m));
  }
}

TEST_CASE("mutation under default rates preserves validity") {
  RngStream rng(5);
  DirectRates rates;
  DirectGenome g = random_direct(rng);
  for (int i = 0; i < 5000; ++i) {
    g = mutate_direct(g, rng, rates);
    REQUIRE(valid_genome(g));
  }
}

TEST_CASE("crossover splices a prefix of one parent onto a suffix of the other") {
  RngStream rng(6);
  const DirectGenome a{{{1, Placement::Linear},
                        {2, Placement::Linear},
                        {3, Placement::Linear}}};
  const DirectGenome b{{{4, Placement::Coaxial}, {5, Placement::Coaxial}}};
  for (int i = 0; i < 500; ++i) {
    const auto [c1, c2] = crossover_direct(a, b, rng);
    CHECK(valid_genome(c1));
    CHECK(valid_genome(c2));
    // Total genetic material is conserved by one-point crossover.
    CHECK(c1.genes.size() + c2.genes.size() == a.genes.size() + b.genes.size());
    // Children begin with a prefix of their lead parent.
    CHECK(c1.genes[0] == a.genes[0]);
    CHECK(c2.genes[0] == b.genes[0]);
  }
}

TEST_CASE("crossover is reproducible under the same stream") {
  RngStream r1(7);
  RngStream r2(7);
  const DirectGenome a = random_direct(r1);
  const DirectGenome b = random_direct(r1);
  const DirectGenome a2 = random_direct(r2);
  const DirectGenome b2 = random_direct(r2);
  const auto p1 = crossover_direct(a, b, r1);
  const auto p2 = crossover_direct(a2, b2, r2);
  CHECK(p1.first == p2.first);
  CHECK(p1.second == p2.second);
}

TEST_CASE("crossover on fuzzed parents always yields bounded children") {
  RngStream rng(8);
  for (int i = 0; i < 5000; ++i) {
    const DirectGenome a = random_direct(rng);
    const DirectGenome b = random_direct(rng);
    const auto [c1, c2] = crossover_direct(a, b, rng);
    CHECK(valid_genome(c1));
    CHECK(valid_genome(c2));
  }
}
