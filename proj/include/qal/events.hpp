#pragma once

#include <string>
#include <vector>

#include "qal/gates.hpp"

namespace qal::eco {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

enum class EventType { kMove, kInteract, kBirth, kMutate, kDeath, kSkip };

struct Event {
  double time = 0.0;
  EventType type = EventType::kMove;
  int id = -1;         // subject individual
  int id2 = -1;        // partner (interact) or parent (birth)
  Cell cell{};
  gates::GateKind gate = gates::GateKind::kCnot;  // birth: clone gate used
  double theta = 0.0;                             // mutate / imperfect clone angle
  std::string reason;                             // skip events
};

// One line per event, stable field order, %.6f times. Grep-friendly and
// byte-identical across runs with equal seeds.
std::string to_line(const Event& event);

std::string to_lines(const std::vector<Event>& events);

}  // namespace qal::eco
