#include "qal/events.hpp"

#include <cstdio>

namespace qal::eco {

namespace {
std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}
}  // namespace

std::string to_line(const Event& event) {
  std::string line = "t=" + fmt("%.6f", event.time);
  const auto cell = [&] {
    return " cell=" + std::to_string(event.cell.row) + "," + std::to_string(event.cell.col);
  };
  switch (event.type) {
    case EventType::kMove:
      line += " move id=" + std::to_string(event.id) + cell();
      break;
    case EventType::kInteract:
      line += " interact a=" + std::to_string(event.id) + " b=" + std::to_string(event.id2) + cell();
      break;
    case EventType::kBirth:
      line += " birth id=" + std::to_string(event.id);
      if (event.id2 >= 0) line += " parent=" + std::to_string(event.id2);
      line += cell() + " gate=" + gates::GateSpec{event.gate, event.theta}.name();
      if (event.gate == gates::GateKind::kImperfectClone) line += " theta=" + fmt("%.6f", event.theta);
      break;
    case EventType::kMutate:
      line += " mutate id=" + std::to_string(event.id) + " theta=" + fmt("%.6f", event.theta);
      break;
    case EventType::kDeath:
      line += " death id=" + std::to_string(event.id) + cell();
      break;
    case EventType::kSkip:
      line += " skip id=" + std::to_string(event.id) + " reason=" + event.reason;
      break;
  }
  return line;
}

std::string to_lines(const std::vector<Event>& events) {
  std::string out;
  for (const Event& e : events) {
    out += to_line(e);
    out += '\n';
  }
  return out;
}

}  // namespace qal::eco
