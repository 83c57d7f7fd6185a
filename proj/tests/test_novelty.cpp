#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gearevo/direct.hpp"
#include "gearevo/novelty.hpp"
#include "gearevo/rnn.hpp"
#include "gearevo/rng.hpp"

using namespace gearevo;

namespace {

Mechanism place(std::initializer_list<PlacementStep> steps) {
  std::vector<PlacementStep> v(steps);
  return place_sequence(v, GeometryConfig{});
}

NoveltyVector vec(std::initializer_list<double> f) {
  NoveltyVector v;
  std::size_t i = 0;
  for (double x : f) v.f[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("hand-derived vector: type 2 then type 6") {
  const NoveltyVector v =
      novelty_vector(place({{2, Placement::Linear}, {6, Placement::Linear}}));
  CHECK(v.f[0] == 400.0);
  CHECK(v.f[1] == 3.0);
  CHECK(v.f[2] == 0.0);
  CHECK(v.f[3] == 20.0);
  CHECK(v.f[4] == 100.0);
  CHECK(v.f[5] == 2.0);
}

TEST_CASE("hand-derived vector: two type-1 gears") {
  const NoveltyVector v =
      novelty_vector(place({{1, Placement::Linear}, {1, Placement::Linear}}));
  CHECK(v.f[0] == 25.0);
  CHECK(v.f[1] == 1.0);
  CHECK(v.f[2] == 0.0);
  CHECK(v.f[3] == 5.0);
  CHECK(v.f[4] == 0.0);
  CHECK(v.f[5] == 2.0);
}

TEST_CASE("identical gears zero the ratio and radius variances") {
  const NoveltyVector v = novelty_vector(place({{4, Placement::Linear},
                                                {4, Placement::Coaxial},
                                                {4, Placement::Linear}}));
  CHECK(v.f[2] == 0.0);
  CHECK(v.f[4] == 0.0);
  CHECK(v.f[5] == 3.0);
}

TEST_CASE("ratios cover every consecutive pair including coaxial hops") {
  // Radii 10, 30, 5: ratios 3 and 1/6 regardless of placement kind.
  const NoveltyVector v = novelty_vector(place({{2, Placement::Linear},
                                                {6, Placement::Coaxial},
                                                {1, Placement::Linear}}));
  const double r1 = 3.0;
  const double r2 = 5.0 / 30.0;
  const double mean = (r1 + r2) / 2.0;
  CHECK(v.f[1] == doctest::Approx(mean).epsilon(1e-15));
  const double var = ((r1 - mean) * (r1 - mean) + (r2 - mean) * (r2 - mean)) / 2.0;
  CHECK(v.f[2] == doctest::Approx(var).epsilon(1e-15));
}

TEST_CASE("euclidean distance matches the scalar oracle") {
  const NoveltyVector a = vec({400, 3, 0, 20, 100, 2});
  const NoveltyVector b = vec({25, 1, 0, 5, 0, 2});
  // sqrt(375^2 + 2^2 + 15^2 + 100^2) = sqrt(150854)
  CHECK(euclidean(a, b) == doctest::Approx(std::sqrt(150854.0)).epsilon(1e-15));
  CHECK(euclidean(a, b) == doctest::Approx(388.3992790930488).epsilon(1e-12));
  CHECK(euclidean(a, a) == 0.0);
}

TEST_CASE("novelty score is the minimum distance to the archive") {
  const NoveltyVector v = vec({400, 3, 0, 20, 100, 2});
  std::vector<NoveltyVector> archive{vec({25, 1, 0, 5, 0, 2})};
  std::vector<NoveltyVector> pop{v};
  CHECK(novelty_score(v, archive, pop, 0) ==
        doctest::Approx(388.3992790930488).epsilon(1e-12));

  archive.push_back(v);  // identical entry drives the minimum to zero
  CHECK(novelty_score(v, archive, pop, 0) == 0.0);
}

TEST_CASE("novelty score is archive-order invariant") {
  RngStream rng(12);
  std::vector<NoveltyVector> archive;
  for (int i = 0; i < 8; ++i) {
    NoveltyVector n;
    for (double& x : n.f) x = rng.uniform(0.0, 50.0);
    archive.push_back(n);
  }
  const NoveltyVector v = vec({10, 1, 0.5, 12, 30, 4});
  std::vector<NoveltyVector> pop{v};
  const double base = novelty_score(v, archive, pop, 0);
  std::reverse(archive.begin(), archive.end());
  CHECK(novelty_score(v, archive, pop, 0) == base);
}

TEST_CASE("empty archive falls back to nearest population peer") {
  const NoveltyVector a = vec({0, 0, 0, 0, 0, 2});
  const NoveltyVector b = vec({3, 4, 0, 0, 0, 2});
  const NoveltyVector c = vec({6, 8, 0, 0, 0, 2});
  std::vector<NoveltyVector> pop{a, b, c};
  CHECK(novelty_score(a, {}, pop, 0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(novelty_score(b, {}, pop, 1) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(novelty_score(c, {}, pop, 2) == doctest::Approx(5.0).epsilon(1e-15));

  std::vector<NoveltyVector> lonely{a};
  CHECK(novelty_score(a, {}, lonely, 0) == 0.0);
}

TEST_CASE("fitness: feasible scores novelty, infeasible scores -violation") {
  const Mechanism feasible =
      place({{2, Placement::Linear}, {6, Placement::Linear}});
  const Mechanism infeasible = place({{1, Placement::Linear},
                                      {1, Placement::Linear},
                                      {6, Placement::Coaxial}});
  REQUIRE(feasible.feasibility.feasible);
  REQUIRE_FALSE(infeasible.feasibility.feasible);

  std::vector<NoveltyVector> vectors{novelty_vector(feasible),
                                     novelty_vector(infeasible)};
  std::vector<FeasibilityReport> feas{feasible.feasibility,
                                      infeasible.feasibility};
  std::vector<NoveltyVector> archive{vec({25, 1, 0, 5, 0, 2})};

  const FitnessResult r = assign_fitness(vectors, feas, archive);
  CHECK(r.fitness[0] == doctest::Approx(388.3992790930488).epsilon(1e-12));
  CHECK(r.fitness[1] == doctest::Approx(-37.5).epsilon(1e-12));
  CHECK(r.novelty_scores.size() == 2);
  CHECK(r.novelty_scores[1] > 0.0);  // recorded even for infeasible entries
}

TEST_CASE("violation 22.5 maps to fitness -22.5") {
  FeasibilityReport bad;
  bad.feasible = false;
  bad.violation_mm = 22.5;
  bad.breaches.push_back({BreachKind::AxleClash, 22.5, 2, 0});
  std::vector<NoveltyVector> vectors{vec({1, 1, 0, 5, 0, 2})};
  std::vector<FeasibilityReport> feas{bad};
  const FitnessResult r = assign_fitness(vectors, feas, {});
  CHECK(r.fitness[0] == -22.5);
}

TEST_CASE("fitness ordering holds on fuzzed mixed populations") {
  RngStream rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + rng.uniform_index(30);
    std::vector<NoveltyVector> vectors;
    std::vector<FeasibilityReport> feas;
    for (std::size_t i = 0; i < n; ++i) {
      NoveltyVector v;
      for (double& x : v.f) x = rng.uniform(0.0, 400.0);
      vectors.push_back(v);
      FeasibilityReport f;
      if (rng.bernoulli(0.5)) {
        f.feasible = false;
        f.violation_mm = rng.uniform(0.001, 500.0);
        f.breaches.push_back({BreachKind::OutOfBounds, f.violation_mm,
                              static_cast<int>(i), -1});
      }
      feas.push_back(f);
    }
    const FitnessResult r = assign_fitness(vectors, feas, {});
    for (std::size_t i = 0; i < n; ++i) {
      if (feas[i].feasible) {
        CHECK(r.fitness[i] >= 0.0);
      } else {
        CHECK(r.fitness[i] < 0.0);
        CHECK(r.fitness[i] == -feas[i].violation_mm);
      }
    }
  }
}

TEST_CASE("mismatched spans are rejected") {
  std::vector<NoveltyVector> vectors(2);
  std::vector<FeasibilityReport> feas(3);
  CHECK_THROWS_AS(assign_fitness(vectors, feas, {}), std::invalid_argument);
}

TEST_CASE("z-normalization rescales features and kills constant ones") {
  std::vector<NoveltyVector> pop{vec({0, 0, 0, 0, 0, 2}),
                                 vec({10, 0, 0, 0, 0, 2})};
  std::vector<FeasibilityReport> feas(2);
  std::vector<NoveltyVector> archive{vec({5, 0, 0, 0, 0, 2})};

  const FitnessResult raw = assign_fitness(pop, feas, archive, {.normalize = false});
  CHECK(raw.fitness[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(raw.fitness[1] == doctest::Approx(5.0).epsilon(1e-15));

  // Feature 0 z-scores to -1/+1 with the archive point at the mean; the
  // constant gear-count feature contributes nothing.
  const FitnessResult norm = assign_fitness(pop, feas, archive, {.normalize = true});
  CHECK(norm.fitness[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm.fitness[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("best index prefers the highest fitness, ties to the lowest index") {
  std::vector<double> f{1.0, 7.0, 7.0, -2.0};
  CHECK(best_index(f) == 1);
  std::vector<double> all_equal{3.0, 3.0, 3.0};
  CHECK(best_index(all_equal) == 0);
  std::vector<double> empty;
  CHECK_THROWS_AS(best_index(empty), std::invalid_argument);
}

TEST_CASE("archive appends enforce generation order and snapshot semantics") {
  Archive archive;
  ArchiveEntry e;
  e.generation = 0;
  e.encoding = EncodingKind::Direct;
  e.genome = DirectGenome{{{2, Placement::Linear}, {6, Placement::Linear}}};
  e.mechanism = place({{2, Placement::Linear}, {6, Placement::Linear}});
  e.novelty = novelty_vector(e.mechanism);
  archive.append(e);

  ArchiveEntry wrong = e;
  wrong.generation = 2;
  CHECK_THROWS_AS(archive.append(wrong), std::logic_error);
  ArchiveEntry repeat = e;
  CHECK_THROWS_AS(archive.append(repeat), std::logic_error);

  // The stored entry is a value copy, untouched by later edits.
  ArchiveEntry next = e;
  next.generation = 1;
  archive.append(next);
  next.novelty.f[0] = 1e9;
  CHECK(archive.entries()[1].novelty.f[0] == e.novelty.f[0]);

  CHECK(archive.size() == 2);
  CHECK(archive.novelty_vectors().size() == 2);
}
