#include "qal/ecosystem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qal::eco {

namespace {

constexpr double kTimeSlack = 1e-9;  // scripted-event firing tolerance

void check_move_probs(const MoveProbs& m) {
  const double vals[] = {m.stay, m.up, m.down, m.left, m.right};
  double sum = 0;
  for (double v : vals) {
    if (v < 0) throw std::invalid_argument("move probabilities must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("move probabilities must sum to 1");
}

}  // namespace

bool Genotype::valid() const {
  if (!(a >= 0.0 && a <= 1.0)) return false;
  return a * (1.0 - a) + kAlgebraicTol >= b * b + c * c;
}

ComplexMatrix Genotype::density() const {
  if (!valid())
    throw std::invalid_argument(
        "Genotype: requires a in [0,1] and a(1-a) >= b^2 + c^2 (positivity)");
  ComplexMatrix rho(2, 2);
  rho(0, 0) = a;
  rho(0, 1) = Complex(b, -c);
  rho(1, 0) = Complex(b, c);
  rho(1, 1) = 1.0 - a;
  return rho;
}

GridSpec::GridSpec(int rows_, int cols_, const RegionParams& fill)
    : rows(rows_), cols(cols_) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("GridSpec: rows and cols must be >= 1");
  cells.assign(static_cast<size_t>(rows) * cols, fill);
}

bool GridSpec::contains(Cell cell) const {
  return cell.row >= 0 && cell.row < rows && cell.col >= 0 && cell.col < cols;
}

const RegionParams& GridSpec::at(Cell cell) const {
  if (!contains(cell)) throw std::invalid_argument("GridSpec: cell out of range");
  return cells[static_cast<size_t>(cell.row) * cols + cell.col];
}

RegionParams& GridSpec::at(Cell cell) {
  if (!contains(cell)) throw std::invalid_argument("GridSpec: cell out of range");
  return cells[static_cast<size_t>(cell.row) * cols + cell.col];
}

WorldState::WorldState(const GridSpec& grid_, const WorldParams& params_, std::uint64_t seed)
    : grid(grid_), params(params_), reg(params_.qubit_cap), rng(seed) {
  if (grid.rows < 1 || grid.cols < 1)
    throw std::invalid_argument("WorldState: grid must be at least 1x1");
  if (grid.cells.size() != static_cast<size_t>(grid.rows) * grid.cols)
    throw std::invalid_argument("WorldState: grid cell table size mismatch");
  if (params.dt <= 0) throw std::invalid_argument("WorldState: dt must be > 0");
  if (params.epsilon <= 0) throw std::invalid_argument("WorldState: epsilon must be > 0");
  if (params.qubit_cap < 2) throw std::invalid_argument("WorldState: qubit cap must be >= 2");
  if (params.recycle_dead && params.trace_out_dead)
    throw std::invalid_argument("WorldState: recycle_dead and trace_out_dead are exclusive");
  check_move_probs(params.move);
  for (const RegionParams& r : grid.cells) {
    if (r.mutation_rate < 0 || r.mutation_rate > 1 || r.replication_prob < 0 ||
        r.replication_prob > 1 || r.copy_error_prob < 0 || r.copy_error_prob > 1)
      throw std::invalid_argument("WorldState: region probabilities must lie in [0,1]");
    if (r.gamma < 0) throw std::invalid_argument("WorldState: region gamma must be >= 0");
  }
  scripted_fired_.assign(params.scripted.size(), false);
}

Individual& WorldState::find(int id) {
  if (id < 0 || id >= static_cast<int>(individuals.size()))
    throw std::invalid_argument("no individual with id " + std::to_string(id));
  return individuals[id];
}

const Individual& WorldState::find(int id) const {
  if (id < 0 || id >= static_cast<int>(individuals.size()))
    throw std::invalid_argument("no individual with id " + std::to_string(id));
  return individuals[id];
}

int WorldState::live_count() const {
  int n = 0;
  for (const Individual& ind : individuals) n += ind.alive ? 1 : 0;
  return n;
}

double sigma_z_g(const WorldState& world, const Individual& ind) {
  if (!ind.alive && ind.genotype_qubit < 0) return ind.final_sigma_z_g;
  const int t[] = {ind.genotype_qubit};
  return world.reg.expect(sigma_z(), t);
}

double sigma_z_p(const WorldState& world, const Individual& ind) {
  if (!ind.alive && ind.phenotype_qubit < 0) return ind.final_sigma_z_p;
  const int t[] = {ind.phenotype_qubit};
  return world.reg.expect(sigma_z(), t);
}

Individual& spawn_primordial(WorldState& world, const Genotype& genotype, Cell position) {
  if (!world.grid.contains(position))
    throw std::invalid_argument("spawn_primordial: position outside the grid");
  const ComplexMatrix rho_g = genotype.density();  // validates
  if (world.reg.num_qubits() + 2 > world.reg.max_qubits())
    throw CapacityError("spawn_primordial: register cap of " +
                        std::to_string(world.reg.max_qubits()) + " qubits exceeded");

  const int id = static_cast<int>(world.individuals.size());
  world.reg.append_state(rho_g, {id, QubitRole::kGenotype});
  world.reg.append_qubits(1, {{id, QubitRole::kPhenotype}});
  const int gq = world.reg.num_qubits() - 2;
  const int pq = world.reg.num_qubits() - 1;
  const int targets[] = {gq, pq};
  world.reg.apply_unitary(gates::cnot(), targets);

  Individual ind;
  ind.id = id;
  ind.genotype_qubit = gq;
  ind.phenotype_qubit = pq;
  ind.position = position;
  ind.birth_time = world.clock;
  world.individuals.push_back(ind);

  world.events.push_back({world.clock, EventType::kBirth, id, -1, position,
                          gates::GateKind::kCnot, 0.0, {}});
  return world.individuals.back();
}

namespace {

struct QubitPlan {
  std::vector<int> donated;  // reset-and-reuse, in donor id order
  int append_count = 0;
};

// Finds two qubits for a birth without mutating anything; throws
// CapacityError when the world cannot supply them.
QubitPlan plan_child_qubits(WorldState& world) {
  QubitPlan plan;
  if (world.params.recycle_dead) {
    for (const Individual& ind : world.individuals) {
      if (ind.alive) continue;
      if (ind.genotype_qubit >= 0) plan.donated.push_back(ind.genotype_qubit);
      if (static_cast<int>(plan.donated.size()) == 2) break;
      if (ind.phenotype_qubit >= 0) plan.donated.push_back(ind.phenotype_qubit);
      if (static_cast<int>(plan.donated.size()) == 2) break;
    }
  }
  plan.append_count = 2 - static_cast<int>(plan.donated.size());
  if (world.reg.num_qubits() + plan.append_count > world.reg.max_qubits())
    throw CapacityError("replicate: register cap of " +
                        std::to_string(world.reg.max_qubits()) + " qubits exceeded");
  return plan;
}

// Strips donated qubits from their dead owners so they are not donated twice.
void mark_donated(WorldState& world, const std::vector<int>& donated) {
  for (int q : donated)
    for (Individual& ind : world.individuals) {
      if (ind.genotype_qubit == q && !ind.alive) ind.genotype_qubit = -1;
      if (ind.phenotype_qubit == q && !ind.alive) ind.phenotype_qubit = -1;
    }
}

}  // namespace

Individual& replicate_with(WorldState& world, int parent_id, const gates::GateSpec& gate) {
  Individual& parent = world.find(parent_id);
  if (!parent.alive) throw std::invalid_argument("replicate: parent must be alive");
  if (gate.kind != gates::GateKind::kCnot && gate.kind != gates::GateKind::kImperfectClone)
    throw std::invalid_argument("replicate: clone gate must be cnot or imperfect_clone");

  const QubitPlan plan = plan_child_qubits(world);
  const int id = static_cast<int>(world.individuals.size());

  int gq, pq;
  if (plan.donated.empty()) {
    world.reg.append_qubits(2, {{id, QubitRole::kGenotype}, {id, QubitRole::kPhenotype}});
    gq = world.reg.num_qubits() - 2;
    pq = world.reg.num_qubits() - 1;
  } else {
    mark_donated(world, plan.donated);
    gq = plan.donated[0];
    if (plan.donated.size() == 2) {
      pq = plan.donated[1];
    } else {
      world.reg.append_qubits(1, {{id, QubitRole::kPhenotype}});
      pq = world.reg.num_qubits() - 1;
    }
    world.reg.reset_qubit(gq);
    world.reg.relabel(gq, {id, QubitRole::kGenotype});
    if (plan.donated.size() == 2) {
      world.reg.reset_qubit(pq);
      world.reg.relabel(pq, {id, QubitRole::kPhenotype});
    }
  }

  const ComplexMatrix u = gate.matrix();
  const int parent_gq = world.individuals[parent_id].genotype_qubit;
  const int first[] = {parent_gq, gq};
  world.reg.apply_unitary(u, first);
  const int second[] = {gq, pq};
  world.reg.apply_unitary(u, second);

  Individual child;
  child.id = id;
  child.genotype_qubit = gq;
  child.phenotype_qubit = pq;
  child.position = world.individuals[parent_id].position;
  child.birth_time = world.clock;
  child.parent = parent_id;
  world.individuals.push_back(child);

  world.events.push_back({world.clock, EventType::kBirth, id, parent_id, child.position,
                          gate.kind, gate.theta, {}});
  return world.individuals.back();
}

Individual& replicate(WorldState& world, int parent_id) {
  const Individual& parent = world.find(parent_id);
  if (!parent.alive) throw std::invalid_argument("replicate: parent must be alive");
  const RegionParams& region = world.grid.at(parent.position);
  gates::GateSpec gate{gates::GateKind::kCnot, 0.0};
  if (world.rng.bernoulli(region.copy_error_prob))
    gate = {gates::GateKind::kImperfectClone, world.rng.angle()};
  return replicate_with(world, parent_id, gate);
}

void mutate(WorldState& world, int id, double theta) {
  Individual& ind = world.find(id);
  if (!ind.alive) {
    world.events.push_back({world.clock, EventType::kSkip, id, -1, ind.position,
                            gates::GateKind::kMutation, theta, "dead"});
    return;
  }
  const int targets[] = {ind.genotype_qubit};
  world.reg.apply_unitary(gates::mutation_m(theta), targets);
  world.events.push_back({world.clock, EventType::kMutate, id, -1, ind.position,
                          gates::GateKind::kMutation, theta, {}});
}

void interact(WorldState& world, int id_a, int id_b) {
  if (id_a == id_b) throw std::invalid_argument("interact: needs two distinct individuals");
  Individual& a = world.find(id_a);
  Individual& b = world.find(id_b);
  if (!a.alive || !b.alive) throw std::invalid_argument("interact: both individuals must be alive");
  if (!(a.position == b.position))
    throw std::invalid_argument("interact: individuals must share a cell");
  const int targets[] = {a.genotype_qubit, a.phenotype_qubit, b.genotype_qubit,
                         b.phenotype_qubit};
  world.reg.apply_unitary(gates::interaction_ui(), targets);
  world.events.push_back({world.clock, EventType::kInteract, id_a, id_b, a.position,
                          gates::GateKind::kInteraction, 0.0, {}});
}

void move_all(WorldState& world) {
  const MoveProbs& m = world.params.move;
  for (Individual& ind : world.individuals) {
    if (!ind.alive) continue;
    const double u = world.rng.uniform();
    int dr = 0, dc = 0;
    double edge = m.stay;
    if (u < edge) {
      // stay
    } else if (u < (edge += m.up)) {
      dr = -1;
    } else if (u < (edge += m.down)) {
      dr = 1;
    } else if (u < (edge += m.left)) {
      dc = -1;
    } else {
      dc = 1;
    }
    ind.position.row = ((ind.position.row + dr) % world.grid.rows + world.grid.rows) %
                       world.grid.rows;
    ind.position.col = ((ind.position.col + dc) % world.grid.cols + world.grid.cols) %
                       world.grid.cols;
    world.events.push_back({world.clock, EventType::kMove, ind.id, -1, ind.position,
                            gates::GateKind::kCnot, 0.0, {}});
  }
}

namespace {

bool death_check_at(WorldState& world, int id, double event_time) {
  Individual& ind = world.find(id);
  if (!ind.alive) return false;  // deaths are permanent, no re-check
  const double szp = sigma_z_p(world, ind);
  if (szp < 1.0 - world.params.epsilon) return true;

  ind.final_sigma_z_g = sigma_z_g(world, ind);
  ind.final_sigma_z_p = szp;
  ind.alive = false;
  world.events.push_back({event_time, EventType::kDeath, id, -1, ind.position,
                          gates::GateKind::kCnot, 0.0, {}});

  if (world.params.trace_out_dead) {
    const int drop[] = {ind.genotype_qubit, ind.phenotype_qubit};
    world.reg.remove_qubits(drop);
    auto shift = [&](int q) {
      int s = q;
      for (int d : drop)
        if (d < q) --s;
      return s;
    };
    for (Individual& other : world.individuals) {
      if (other.id == id) continue;
      if (other.genotype_qubit >= 0) other.genotype_qubit = shift(other.genotype_qubit);
      if (other.phenotype_qubit >= 0) other.phenotype_qubit = shift(other.phenotype_qubit);
    }
    ind.genotype_qubit = -1;
    ind.phenotype_qubit = -1;
  }
  return false;
}

void fire_scripted(WorldState& world) {
  for (size_t i = 0; i < world.params.scripted.size(); ++i) {
    if (world.scripted_fired_[i]) continue;
    const ScriptedEvent& ev = world.params.scripted[i];
    if (world.clock + kTimeSlack < ev.time) continue;
    world.scripted_fired_[i] = true;
    if (ev.kind == ScriptedEvent::Kind::kMutate) {
      if (ev.id < 0 || ev.id >= static_cast<int>(world.individuals.size())) {
        world.events.push_back({world.clock, EventType::kSkip, ev.id, -1, {},
                                gates::GateKind::kMutation, ev.theta, "missing"});
        continue;
      }
      mutate(world, ev.id, ev.theta);
    } else {
      const bool ok = ev.id >= 0 && ev.id2 >= 0 && ev.id != ev.id2 &&
                      ev.id < static_cast<int>(world.individuals.size()) &&
                      ev.id2 < static_cast<int>(world.individuals.size()) &&
                      world.individuals[ev.id].alive && world.individuals[ev.id2].alive &&
                      world.individuals[ev.id].position == world.individuals[ev.id2].position;
      if (!ok) {
        world.events.push_back({world.clock, EventType::kSkip, ev.id, ev.id2, {},
                                gates::GateKind::kInteraction, 0.0, "invalid-interact"});
        continue;
      }
      interact(world, ev.id, ev.id2);
    }
  }
}

void run_interactions(WorldState& world) {
  std::vector<std::vector<int>> occupants(static_cast<size_t>(world.grid.rows) *
                                          world.grid.cols);
  for (const Individual& ind : world.individuals)
    if (ind.alive)
      occupants[static_cast<size_t>(ind.position.row) * world.grid.cols + ind.position.col]
          .push_back(ind.id);
  for (std::vector<int>& ids : occupants) {
    if (ids.size() < 2) continue;
    world.rng.shuffle(ids);
    for (size_t k = 0; k + 1 < ids.size(); k += 2) interact(world, ids[k], ids[k + 1]);
  }
}

}  // namespace

bool death_check(WorldState& world, int id) { return death_check_at(world, id, world.clock); }

void step(WorldState& world) {
  move_all(world);
  fire_scripted(world);
  if (world.params.interactions) run_interactions(world);

  std::vector<int> live_ids;
  for (const Individual& ind : world.individuals)
    if (ind.alive) live_ids.push_back(ind.id);

  for (int id : live_ids) {
    const Individual& ind = world.individuals[id];
    const RegionParams& region = world.grid.at(ind.position);
    if (world.rng.bernoulli(region.replication_prob)) {
      try {
        replicate(world, id);
      } catch (const CapacityError&) {
        ++world.skipped_births;
        world.events.push_back({world.clock, EventType::kSkip, id, -1, ind.position,
                                gates::GateKind::kCnot, 0.0, "capacity"});
      }
    }
  }

  for (Individual& ind : world.individuals) {
    if (!ind.alive) continue;
    const RegionParams& region = world.grid.at(ind.position);
    if (world.rng.bernoulli(region.mutation_rate)) mutate(world, ind.id, world.rng.angle());
  }

  for (Individual& ind : world.individuals) {
    if (!ind.alive) continue;
    const RegionParams& region = world.grid.at(ind.position);
    channels::apply_damping(world.reg, ind.phenotype_qubit,
                            {region.gamma, world.params.dt});
  }

  const double end_time = world.params.dt * (world.steps_taken + 1);
  for (Individual& ind : world.individuals)
    if (ind.alive) death_check_at(world, ind.id, end_time);

  ++world.steps_taken;
  world.clock = world.params.dt * world.steps_taken;
}

}  // namespace qal::eco
