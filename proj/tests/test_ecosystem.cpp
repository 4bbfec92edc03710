#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qal/ecosystem.hpp"
#include "qal/measure.hpp"
#include "test_support.hpp"

using namespace qal;
using namespace qal::eco;

namespace {

constexpr double kPi = std::numbers::pi;

long count_events(const WorldState& world, EventType type) {
  long n = 0;
  for (const Event& ev : world.events) n += ev.type == type ? 1 : 0;
  return n;
}

const Event* first_event(const WorldState& world, EventType type) {
  for (const Event& ev : world.events)
    if (ev.type == type) return &ev;
  return nullptr;
}

}  // namespace

TEST_CASE("genotype validity") {
  CHECK(Genotype{0.5, 0.0, 0.0}.valid());
  CHECK(Genotype{1.0, 0.0, 0.0}.valid());
  CHECK(Genotype{0.5, 0.5, 0.0}.valid());       // pure |+>
  CHECK(Genotype{0.5, 0.353, 0.353}.valid());   // inside the disc
  CHECK_FALSE(Genotype{-0.1, 0.0, 0.0}.valid());
  CHECK_FALSE(Genotype{1.1, 0.0, 0.0}.valid());
  CHECK_FALSE(Genotype{0.9, 0.5, 0.0}.valid()); // |b+ic| too large for a
  CHECK_THROWS_AS((Genotype{0.9, 0.5, 0.0}.density()), std::invalid_argument);

  const ComplexMatrix rho = Genotype{0.6, 0.3, 0.2}.density();
  CHECK(rho(0, 0) == Complex(0.6, 0.0));
  CHECK(rho(0, 1) == Complex(0.3, -0.2));
  CHECK(rho(1, 0) == Complex(0.3, 0.2));
  CHECK(std::abs(rho(1, 1) - Complex(0.4, 0.0)) <= 1e-15);
}

TEST_CASE("world construction validates parameters") {
  const RegionParams region{0.0, 0.0, 1.0, 0.0};
  GridSpec grid(2, 3, region);
  CHECK(grid.cells.size() == 6);
  CHECK(grid.contains({1, 2}));
  CHECK_FALSE(grid.contains({2, 0}));
  CHECK_FALSE(grid.contains({0, -1}));
  CHECK_THROWS_AS(grid.at(Cell{5, 5}), std::invalid_argument);

  WorldParams params;
  params.dt = 0.0;
  CHECK_THROWS_AS(WorldState(grid, params, 1), std::invalid_argument);
  params.dt = 0.1;
  params.epsilon = 0.0;
  CHECK_THROWS_AS(WorldState(grid, params, 1), std::invalid_argument);
  params.epsilon = 0.01;
  params.qubit_cap = 1;
  CHECK_THROWS_AS(WorldState(grid, params, 1), std::invalid_argument);
  params.qubit_cap = 4;
  params.move.stay = 0.9;  // probabilities no longer sum to 1
  CHECK_THROWS_AS(WorldState(grid, params, 1), std::invalid_argument);
  params.move.stay = 0.2;
  params.recycle_dead = true;
  params.trace_out_dead = true;
  CHECK_THROWS_AS(WorldState(grid, params, 1), std::invalid_argument);

  GridSpec bad = grid;
  bad.cells.pop_back();
  CHECK_THROWS_AS(WorldState(bad, WorldParams{}, 1), std::invalid_argument);
}

TEST_CASE("spawned founder state equals cloning applied to genotype x |0>") {
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 0.01, 4, 11);
  const Genotype g{0.6, 0.3, 0.2};
  const Individual& ind = spawn_primordial(world, g, {0, 0});

  ComplexMatrix zero = ket_bra(0, 0);
  ComplexMatrix want = kron(g.density(), zero);
  const ComplexMatrix cn = gates::cnot();
  want = cn * want * cn.adjoint();
  CHECK(max_abs_diff(world.reg.matrix(), want) <= 1e-14);

  CHECK(ind.id == 0);
  CHECK(ind.genotype_qubit == 0);
  CHECK(ind.phenotype_qubit == 1);
  CHECK_FALSE(ind.parent.has_value());
  CHECK(world.reg.labels()[0].owner == 0);
  CHECK(world.reg.labels()[0].role == QubitRole::kGenotype);
  CHECK(world.reg.labels()[1].role == QubitRole::kPhenotype);

  // Cloning copies the ground population: both expectations start equal.
  CHECK(sigma_z_g(world, ind) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(sigma_z_p(world, ind) == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(spawn_primordial(world, g, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(spawn_primordial(world, Genotype{2.0, 0, 0}, {0, 0}),
                  std::invalid_argument);
  spawn_primordial(world, g, {0, 0});  // second founder fills the cap of 4
  CHECK_THROWS_AS(spawn_primordial(world, g, {0, 0}), CapacityError);
}

TEST_CASE("genotype is noiseless while the phenotype decays") {
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 1e-6, 2, 12);
  const Individual& ind = spawn_primordial(world, {0.7, 0, 0}, {0, 0});
  for (int k = 1; k <= 30; ++k) {
    step(world);
    CHECK(sigma_z_g(world, ind) == doctest::Approx(0.4).epsilon(1e-12));
    const double want = channels::phenotype_decay_closed_form(0.7, 1.0, 0.1 * k);
    CHECK(sigma_z_p(world, ind) - want == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(world.clock == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(world.steps_taken == 30);
}

TEST_CASE("a fully grounded founder is dead on arrival") {
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 0.01, 2, 13);
  spawn_primordial(world, {1.0, 0, 0}, {0, 0});
  step(world);
  const Individual& ind = world.find(0);
  CHECK_FALSE(ind.alive);
  CHECK(world.live_count() == 0);
  CHECK(ind.final_sigma_z_g == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ind.final_sigma_z_p == doctest::Approx(1.0).epsilon(1e-12));
  const Event* death = first_event(world, EventType::kDeath);
  REQUIRE(death != nullptr);
  CHECK(death->time == doctest::Approx(0.1).epsilon(1e-15));

  // Deaths are permanent; a later death check cannot resurrect.
  CHECK_FALSE(death_check(world, 0));
  CHECK(count_events(world, EventType::kDeath) == 1);
}

TEST_CASE("death lands at the predicted step") {
  // a = 0.9, epsilon = 0.01: threshold crossing at ln 20 ~ 2.9957.
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 0.01, 2, 14);
  spawn_primordial(world, {0.9, 0, 0}, {0, 0});
  const double td = channels::death_time(0.9, 1.0, 0.01).time;
  const long expect_step = static_cast<long>(std::ceil(td / 0.1));
  for (long k = 1; k <= 40; ++k) {
    step(world);
    if (k < expect_step) {
      CHECK(world.find(0).alive);
    } else {
      CHECK_FALSE(world.find(0).alive);
    }
  }
  const Event* death = first_event(world, EventType::kDeath);
  REQUIRE(death != nullptr);
  CHECK(death->time == doctest::Approx(0.1 * expect_step).epsilon(1e-12));
}

TEST_CASE("perfect replication copies the genotype expectation") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 6, 15);
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  const Individual& child =
      replicate_with(world, 0, {gates::GateKind::kCnot, 0.0});
  CHECK(child.id == 1);
  CHECK(child.parent == 0);
  CHECK(child.position == world.find(0).position);
  CHECK(sigma_z_g(world, child) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(sigma_z_p(world, child) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.6).epsilon(1e-12));

  const Event* birth = first_event(world, EventType::kBirth);
  REQUIRE(birth != nullptr);  // the founder's own birth
  CHECK(count_events(world, EventType::kBirth) == 2);
  CHECK(world.events.back().type == EventType::kBirth);
  CHECK(world.events.back().id == 1);
  CHECK(world.events.back().id2 == 0);
}

TEST_CASE("copy error shifts the child genotype by the closed form") {
  // Parent diagonal with <sigma_z> = g; the imperfect clone gate leaves the
  // child's qubit at (1+g)/2 - (1-g)/2 cos(theta).
  const double a = 0.9, g = 2 * a - 1;
  for (double theta : {0.0, kPi / 3, kPi / 2, 2.0, kPi}) {
    WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 16);
    spawn_primordial(world, {a, 0, 0}, {0, 0});
    const Individual& child =
        replicate_with(world, 0, {gates::GateKind::kImperfectClone, theta});
    const double want = (1 + g) / 2 - (1 - g) / 2 * std::cos(theta);
    CHECK(sigma_z_g(world, child) == doctest::Approx(want).epsilon(1e-12));
    // theta = pi is the identity: the child stays in |0>.
    if (theta == kPi) CHECK(sigma_z_g(world, child) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("replication preconditions") {
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 0.01, 6, 17);
  spawn_primordial(world, {1.0, 0, 0}, {0, 0});
  step(world);  // founder dies immediately
  CHECK_THROWS_AS(replicate_with(world, 0, {gates::GateKind::kCnot, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(replicate_with(world, 7, {gates::GateKind::kCnot, 0.0}),
                  std::invalid_argument);

  WorldState full = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 17);
  spawn_primordial(full, {0.8, 0, 0}, {0, 0});
  replicate_with(full, 0, {gates::GateKind::kCnot, 0.0});
  CHECK_THROWS_AS(replicate_with(full, 0, {gates::GateKind::kCnot, 0.0}), CapacityError);
  CHECK_THROWS_AS(replicate_with(full, 0, {gates::GateKind::kMutation, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("capacity-blocked births during a step are logged and counted") {
  WorldState world = testsupport::quiet_world({0, 1.0, 0.0, 0}, 0.1, 0.01, 4, 18);
  spawn_primordial(world, {0.75, 0, 0}, {0, 0});
  step(world);  // founder replicates, register now full
  CHECK(world.individuals.size() == 2);
  CHECK(world.skipped_births == 0);
  step(world);  // both replication draws hit the cap
  CHECK(world.individuals.size() == 2);
  CHECK(world.skipped_births == 2);
  long skips = 0;
  for (const Event& ev : world.events)
    if (ev.type == EventType::kSkip) {
      ++skips;
      CHECK(ev.reason == "capacity");
    }
  CHECK(skips == 2);
  CHECK(world.live_count() == 2);
}

TEST_CASE("recycling reuses a dead individual's qubits") {
  RegionParams region{0, 0, 1.0, 0};
  GridSpec grid(1, 1, region);
  WorldParams params;
  params.dt = 0.1;
  params.epsilon = 0.15;
  params.qubit_cap = 4;
  params.interactions = false;
  params.recycle_dead = true;
  WorldState world(grid, params, 19);

  spawn_primordial(world, {0.9, 0, 0}, {0, 0});  // dies at ln(0.2/0.15) ~ 0.288
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});  // dies at ln(0.4/0.15) ~ 0.981
  for (int k = 0; k < 4; ++k) step(world);
  CHECK_FALSE(world.find(0).alive);
  CHECK(world.find(1).alive);
  CHECK(world.find(0).genotype_qubit == 0);  // qubits retained until donated

  const Individual& child = replicate_with(world, 1, {gates::GateKind::kCnot, 0.0});
  CHECK(world.reg.num_qubits() == 4);  // no growth, donor qubits reused
  CHECK(child.genotype_qubit == 0);
  CHECK(child.phenotype_qubit == 1);
  CHECK(world.find(0).genotype_qubit == -1);
  CHECK(world.find(0).phenotype_qubit == -1);
  CHECK(world.reg.labels()[0].owner == child.id);
  CHECK(sigma_z_g(world, child) == doctest::Approx(0.6).epsilon(1e-12));

  // The donor's frozen record outlives the donation.
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sigma_z_p(world, world.find(0)) >= 1.0 - params.epsilon);
}

TEST_CASE("tracing out the dead shrinks the register and remaps survivors") {
  RegionParams region{0, 0, 1.0, 0};
  GridSpec grid(1, 1, region);
  WorldParams params;
  params.dt = 0.1;
  params.epsilon = 0.15;
  params.qubit_cap = 4;
  params.interactions = false;
  params.trace_out_dead = true;
  WorldState world(grid, params, 20);

  spawn_primordial(world, {0.9, 0, 0}, {0, 0});
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});

  // Control world that keeps dead qubits, same dynamics.
  WorldParams keep = params;
  keep.trace_out_dead = false;
  WorldState control(grid, keep, 20);
  spawn_primordial(control, {0.9, 0, 0}, {0, 0});
  spawn_primordial(control, {0.8, 0, 0}, {0, 0});

  for (int k = 0; k < 4; ++k) {
    step(world);
    step(control);
  }
  CHECK_FALSE(world.find(0).alive);
  CHECK(world.reg.num_qubits() == 2);
  CHECK(world.find(0).genotype_qubit == -1);
  CHECK(world.find(0).phenotype_qubit == -1);
  CHECK(world.find(1).genotype_qubit == 0);
  CHECK(world.find(1).phenotype_qubit == 1);
  CHECK(world.reg.labels()[0].owner == 1);

  // Survivor physics is unchanged by the trace-out.
  CHECK(sigma_z_g(world, world.find(1)) ==
        doctest::Approx(sigma_z_g(control, control.find(1))).epsilon(1e-12));
  CHECK(sigma_z_p(world, world.find(1)) ==
        doctest::Approx(sigma_z_p(control, control.find(1))).epsilon(1e-12));

  // The dead record reports the frozen values.
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sigma_z_p(world, world.find(0)) >= 1.0 - params.epsilon);

  // Dynamics continue cleanly on the smaller register.
  for (int k = 0; k < 3; ++k) step(world);
  CHECK(world.reg.validate(false).ok());
}

TEST_CASE("mutation rotates the genotype expectation") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 2, 21);
  spawn_primordial(world, {0.7, 0, 0}, {0, 0});
  mutate(world, 0, kPi / 4);
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.0).epsilon(1e-12));
  const Event* mut = first_event(world, EventType::kMutate);
  REQUIRE(mut != nullptr);
  CHECK(mut->theta == doctest::Approx(kPi / 4).epsilon(1e-15));

  // M is involutory: repeating the same angle restores the state.
  mutate(world, 0, kPi / 4);
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("mutating the dead is skipped, not fatal") {
  WorldState world = testsupport::quiet_world({0, 0, 1.0, 0}, 0.1, 0.01, 2, 22);
  spawn_primordial(world, {1.0, 0, 0}, {0, 0});
  step(world);
  REQUIRE_FALSE(world.find(0).alive);
  mutate(world, 0, 1.0);
  const Event& last = world.events.back();
  CHECK(last.type == EventType::kSkip);
  CHECK(last.reason == "dead");
  CHECK(count_events(world, EventType::kMutate) == 0);
}

TEST_CASE("interaction mixes phenotypes by the genotype disagreement weight") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 23);
  const double a1 = 0.8, a2 = 0.2;
  spawn_primordial(world, {a1, 0, 0}, {0, 0});
  spawn_primordial(world, {a2, 0, 0}, {0, 0});

  // Unequal damping so the phenotypes carry distinct expectations.
  channels::apply_damping(world.reg, world.find(0).phenotype_qubit, {1.0, 0.4});
  channels::apply_damping(world.reg, world.find(1).phenotype_qubit, {1.0, 1.1});
  const double p1 = sigma_z_p(world, world.find(0));
  const double p2 = sigma_z_p(world, world.find(1));
  REQUIRE(p1 != doctest::Approx(p2).epsilon(1e-6));

  interact(world, 0, 1);

  // Diagonal genotypes with clone-correlated phenotypes: conditioning on the
  // exchange branch gives a2 + (1-a2) [(1-a1) d1 + a1 d2] for the first
  // phenotype (d_i = 1 - 2 e^{-gamma t_i}) and the mirror for the second.
  const double d1 = 1 - 2 * std::exp(-0.4);
  const double d2 = 1 - 2 * std::exp(-1.1);
  CHECK(sigma_z_p(world, world.find(0)) ==
        doctest::Approx(a2 + (1 - a2) * ((1 - a1) * d1 + a1 * d2)).epsilon(1e-12));
  CHECK(sigma_z_p(world, world.find(1)) ==
        doctest::Approx(a1 + (1 - a1) * ((1 - a2) * d2 + a2 * d1)).epsilon(1e-12));
  // The swap only permutes phenotype values, so the total is conserved.
  CHECK(sigma_z_p(world, world.find(0)) + sigma_z_p(world, world.find(1)) ==
        doctest::Approx(p1 + p2).epsilon(1e-12));

  // Genotypes are untouched.
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(2 * a1 - 1).epsilon(1e-12));
  CHECK(sigma_z_g(world, world.find(1)) == doctest::Approx(2 * a2 - 1).epsilon(1e-12));
  CHECK(world.events.back().type == EventType::kInteract);
}

TEST_CASE("interaction at equal damping exposure swaps phenotype expectations") {
  // With both phenotypes damped for the same time, the branch bookkeeping
  // collapses: the expectations trade places exactly, crossing the ordering.
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 24);
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  spawn_primordial(world, {0.2, 0, 0}, {0, 0});
  channels::apply_damping(world.reg, world.find(0).phenotype_qubit, {1.0, 0.5});
  channels::apply_damping(world.reg, world.find(1).phenotype_qubit, {1.0, 0.5});
  const double p1 = sigma_z_p(world, world.find(0));
  const double p2 = sigma_z_p(world, world.find(1));
  REQUIRE(p1 - p2 > 0.1);
  interact(world, 0, 1);
  CHECK(sigma_z_p(world, world.find(0)) == doctest::Approx(p2).epsilon(1e-12));
  CHECK(sigma_z_p(world, world.find(1)) == doctest::Approx(p1).epsilon(1e-12));
}

TEST_CASE("interaction with identical basis genotypes is the identity") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 25);
  spawn_primordial(world, {0.0, 0, 0}, {0, 0});
  spawn_primordial(world, {0.0, 0, 0}, {0, 0});
  // Damping makes the first phenotype distinguishable from the second, so a
  // spurious exchange would show.
  channels::apply_damping(world.reg, world.find(0).phenotype_qubit, {1.0, 0.7});
  const ComplexMatrix before = world.reg.matrix();
  interact(world, 0, 1);
  CHECK(max_abs_diff(world.reg.matrix(), before) <= 1e-12);
}

TEST_CASE("interaction preconditions") {
  RegionParams region{0, 0, 1.0, 0};
  GridSpec grid(1, 2, region);
  WorldParams params;
  params.qubit_cap = 6;
  params.interactions = false;
  WorldState world(grid, params, 26);
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  spawn_primordial(world, {0.5, 0, 0}, {0, 1});
  spawn_primordial(world, {1.0, 0, 0}, {0, 0});
  CHECK_THROWS_AS(interact(world, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(interact(world, 0, 1), std::invalid_argument);  // different cells
  step(world);  // kills the grounded founder
  REQUIRE_FALSE(world.find(2).alive);
  CHECK_THROWS_AS(interact(world, 0, 2), std::invalid_argument);
}

TEST_CASE("movement wraps on the torus and spends one draw per live individual") {
  RegionParams region{0, 0, 0.0, 0};
  GridSpec grid(3, 3, region);
  WorldParams params;
  params.qubit_cap = 2;
  params.interactions = false;
  params.move = {0.0, 1.0, 0.0, 0.0, 0.0};  // always up
  WorldState world(grid, params, 27);
  spawn_primordial(world, {0.8, 0, 0}, {0, 1});
  move_all(world);
  CHECK(world.find(0).position == Cell{2, 1});  // wrapped past the top edge
  move_all(world);
  CHECK(world.find(0).position == Cell{1, 1});
  move_all(world);
  CHECK(world.find(0).position == Cell{0, 1});
  CHECK(count_events(world, EventType::kMove) == 3);

  params.move = {0.0, 0.0, 0.0, 1.0, 0.0};  // always left
  WorldState sideways(grid, params, 27);
  spawn_primordial(sideways, {0.8, 0, 0}, {1, 0});
  move_all(sideways);
  CHECK(sideways.find(0).position == Cell{1, 2});
}

TEST_CASE("equal seeds walk identically, different seeds diverge") {
  RegionParams region{0, 0, 0.0, 0};
  GridSpec grid(5, 5, region);
  WorldParams params;
  params.qubit_cap = 2;
  params.interactions = false;
  WorldState a(grid, params, 1234), b(grid, params, 1234), c(grid, params, 4321);
  for (WorldState* w : {&a, &b, &c}) spawn_primordial(*w, {0.8, 0, 0}, {2, 2});
  bool diverged = false;
  for (int k = 0; k < 50; ++k) {
    move_all(a);
    move_all(b);
    move_all(c);
    CHECK(a.find(0).position == b.find(0).position);
    diverged = diverged || !(a.find(0).position == c.find(0).position);
  }
  CHECK(diverged);
}

TEST_CASE("scripted mutation fires once at its scheduled time") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 2, 28);
  // 0.7 is not exactly representable; the slack window must still fire it.
  world.params.scripted.push_back({0.7, ScriptedEvent::Kind::kMutate, 0, -1, kPi / 4});
  world.scripted_fired_.assign(1, false);
  spawn_primordial(world, {0.7, 0, 0}, {0, 0});
  for (int k = 0; k < 7; ++k) step(world);
  CHECK(count_events(world, EventType::kMutate) == 0);
  step(world);
  CHECK(count_events(world, EventType::kMutate) == 1);
  CHECK(sigma_z_g(world, world.find(0)) == doctest::Approx(0.0).epsilon(1e-12));
  for (int k = 0; k < 5; ++k) step(world);
  CHECK(count_events(world, EventType::kMutate) == 1);  // one-shot
}

TEST_CASE("scripted events with stale targets are skipped") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 4, 29);
  world.params.scripted.push_back({0.1, ScriptedEvent::Kind::kMutate, 5, -1, 1.0});
  world.params.scripted.push_back({0.1, ScriptedEvent::Kind::kInteract, 0, 0, 0.0});
  world.scripted_fired_.assign(2, false);
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  step(world);
  step(world);
  long missing = 0, invalid = 0;
  for (const Event& ev : world.events) {
    if (ev.type != EventType::kSkip) continue;
    if (ev.reason == "missing") ++missing;
    if (ev.reason == "invalid-interact") ++invalid;
  }
  CHECK(missing == 1);
  CHECK(invalid == 1);
}

TEST_CASE("step phases append events in order") {
  WorldState world = testsupport::quiet_world({1.0, 1.0, 0.0, 0}, 0.1, 0.01, 4, 30);
  world.params.move = {1.0, 0.0, 0.0, 0.0, 0.0};
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  world.events.clear();
  step(world);
  // One move, one birth, then mutation draws for parent and newborn.
  REQUIRE(world.events.size() >= 3);
  CHECK(world.events[0].type == EventType::kMove);
  CHECK(world.events[1].type == EventType::kBirth);
  CHECK(world.events[2].type == EventType::kMutate);
  CHECK(count_events(world, EventType::kMutate) == 2);
}

TEST_CASE("clock advances without accumulation drift") {
  WorldState world = testsupport::quiet_world({0, 0, 0.0, 0}, 0.1, 0.01, 2, 31);
  spawn_primordial(world, {0.8, 0, 0}, {0, 0});
  for (int k = 0; k < 100; ++k) step(world);
  CHECK(world.clock == 100 * 0.1);  // product, not a running sum
  CHECK(world.clock == doctest::Approx(10.0).epsilon(1e-15));
}
