#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qal/channels.hpp"
#include "qal/events.hpp"
#include "qal/gates.hpp"
#include "qal/register.hpp"
#include "qal/rng.hpp"

namespace qal::eco {

// Single-qubit genotype state [[a, b-ic], [b+ic, 1-a]]. a is the ground
// population that sets longevity; b, c carry coherence.
struct Genotype {
  double a = 0.5;
  double b = 0.0;
  double c = 0.0;

  bool valid() const;
  ComplexMatrix density() const;  // throws std::invalid_argument when invalid
};

// Per-cell environment knobs.
struct RegionParams {
  double mutation_rate = 0.01;      // per individual per step
  double replication_prob = 0.05;   // per individual per step
  double gamma = 1.0;               // phenotype damping rate
  double copy_error_prob = 0.01;    // chance a birth uses U_M instead of CNOT
};

struct GridSpec {
  int rows = 8;
  int cols = 8;
  std::vector<RegionParams> cells;  // row-major, rows*cols entries

  GridSpec() = default;
  GridSpec(int rows, int cols, const RegionParams& fill);

  bool contains(Cell cell) const;
  const RegionParams& at(Cell cell) const;
  RegionParams& at(Cell cell);
};

struct Individual {
  int id = -1;
  int genotype_qubit = -1;   // -1 after trace-out
  int phenotype_qubit = -1;
  Cell position{};
  double birth_time = 0.0;
  bool alive = true;
  std::optional<int> parent;
  // Expectations frozen at the moment of death; live values come from the
  // register.
  double final_sigma_z_g = 0.0;
  double final_sigma_z_p = 0.0;
};

// Lazy random walk step distribution; must sum to 1.
struct MoveProbs {
  double stay = 0.2;
  double up = 0.2;
  double down = 0.2;
  double left = 0.2;
  double right = 0.2;
};

// One-shot intervention fired when the clock reaches `time`, after movement
// and before spontaneous dynamics. Drives single-event experiments that the
// stochastic phases would otherwise bury.
struct ScriptedEvent {
  enum class Kind { kMutate, kInteract };
  double time = 0.0;
  Kind kind = Kind::kMutate;
  int id = 1;
  int id2 = 2;        // interact partner
  double theta = 0.0; // mutate angle
};

struct WorldParams {
  double dt = 0.1;
  double epsilon = 0.01;       // death threshold on 1 - <sigma_z>_p
  int qubit_cap = kDefaultQubitCap;
  MoveProbs move;
  bool interactions = true;    // per-step co-location pairing
  bool recycle_dead = false;   // reuse dead individuals' qubits for births
  bool trace_out_dead = false; // drop dead individuals' qubits entirely
  std::vector<ScriptedEvent> scripted;
};

struct WorldState {
  WorldState(const GridSpec& grid, const WorldParams& params, std::uint64_t seed);

  GridSpec grid;
  WorldParams params;
  DensityRegister reg;
  std::vector<Individual> individuals;  // id == index
  Rng rng;
  double clock = 0.0;
  long steps_taken = 0;
  std::vector<Event> events;
  long skipped_births = 0;
  std::vector<bool> scripted_fired_;

  Individual& find(int id);
  const Individual& find(int id) const;
  int live_count() const;
};

// Live individuals read from the register; dead ones return the values
// frozen at death (identical while their qubits remain, and the only record
// once traced out).
double sigma_z_g(const WorldState& world, const Individual& ind);
double sigma_z_p(const WorldState& world, const Individual& ind);

// Appends a genotype prepared in rho_g plus a |0> phenotype ancilla and
// clones genotype -> phenotype. Founders have no parent.
Individual& spawn_primordial(WorldState& world, const Genotype& genotype, Cell position);

// Birth via the given clone gate (CNOT or U_M(theta)), applied twice:
// parent genotype -> child genotype, then child genotype -> child phenotype.
// Throws CapacityError when no two qubits are available.
Individual& replicate_with(WorldState& world, int parent_id, const gates::GateSpec& gate);

// Stochastic replication: draws the clone gate from the parent's region
// (U_M with probability copy_error_prob, theta ~ U[0, 2pi)).
Individual& replicate(WorldState& world, int parent_id);

// Applies M(theta) to the genotype. Dead target: skipped and logged.
void mutate(WorldState& world, int id, double theta);

// Conditional phenotype exchange between two live co-located individuals.
void interact(WorldState& world, int id_a, int id_b);

// One lazy random-walk move per live individual, id order, periodic wrap.
void move_all(WorldState& world);

// Re-evaluates one individual's death condition: dead once
// <sigma_z>_p >= 1 - epsilon. Returns the alive flag.
bool death_check(WorldState& world, int id);

// One synchronous step: move, scripted events, interactions, replication,
// mutation, phenotype damping, death checks, clock advance.
void step(WorldState& world);

}  // namespace qal::eco
