#include "qal/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qal::cli {

using nlohmann::json;

long SimConfig::steps() const {
  const long n = std::llround(total_time / dt);
  return n < 0 ? 0 : n;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(where, "unknown key '" + item.key() + "'");
  }
}

double get_double(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "must be a number");
  return v.get<double>();
}

long get_int(const json& obj, const std::string& where, const char* key, long fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "must be an integer");
  return v.get<long>();
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(where + "." + key, "must be a boolean");
  return v.get<bool>();
}

void check_unit(double v, const std::string& where) {
  if (!(v >= 0.0 && v <= 1.0)) fail(where, "must lie in [0,1]");
}

eco::RegionParams parse_region_params(const json& obj, const std::string& where,
                                      const eco::RegionParams& base) {
  check_keys(obj, where, {"mutation_rate", "replication_prob", "gamma", "copy_error_prob"});
  eco::RegionParams out = base;
  out.mutation_rate = get_double(obj, where, "mutation_rate", base.mutation_rate);
  out.replication_prob = get_double(obj, where, "replication_prob", base.replication_prob);
  out.gamma = get_double(obj, where, "gamma", base.gamma);
  out.copy_error_prob = get_double(obj, where, "copy_error_prob", base.copy_error_prob);
  check_unit(out.mutation_rate, where + ".mutation_rate");
  check_unit(out.replication_prob, where + ".replication_prob");
  check_unit(out.copy_error_prob, where + ".copy_error_prob");
  if (out.gamma < 0) fail(where + ".gamma", "must be >= 0");
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"grid", "defaults", "regions", "founders", "time", "epsilon", "qubit_cap",
              "seed", "realizations", "move", "toggles", "histogram", "outputs",
              "scripted_events"});

  SimConfig cfg;

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    check_keys(g, "grid", {"rows", "cols"});
    cfg.rows = static_cast<int>(get_int(g, "grid", "rows", cfg.rows));
    cfg.cols = static_cast<int>(get_int(g, "grid", "cols", cfg.cols));
    if (cfg.rows < 1) fail("grid.rows", "must be >= 1");
    if (cfg.cols < 1) fail("grid.cols", "must be >= 1");
  }

  if (root.contains("defaults"))
    cfg.defaults = parse_region_params(root.at("defaults"), "defaults", eco::RegionParams{});

  if (root.contains("regions")) {
    const json& regions = root.at("regions");
    if (!regions.is_array()) fail("regions", "must be an array");
    for (size_t i = 0; i < regions.size(); ++i) {
      const std::string where = "regions[" + std::to_string(i) + "]";
      const json& r = regions[i];
      check_keys(r, where, {"row0", "col0", "row1", "col1", "params"});
      RegionRect rect;
      rect.row0 = static_cast<int>(get_int(r, where, "row0", 0));
      rect.col0 = static_cast<int>(get_int(r, where, "col0", 0));
      rect.row1 = static_cast<int>(get_int(r, where, "row1", rect.row0));
      rect.col1 = static_cast<int>(get_int(r, where, "col1", rect.col0));
      if (rect.row0 < 0 || rect.row1 >= cfg.rows || rect.row0 > rect.row1)
        fail(where, "row bounds must satisfy 0 <= row0 <= row1 < grid.rows");
      if (rect.col0 < 0 || rect.col1 >= cfg.cols || rect.col0 > rect.col1)
        fail(where, "col bounds must satisfy 0 <= col0 <= col1 < grid.cols");
      if (!r.contains("params")) fail(where, "missing 'params'");
      rect.params = parse_region_params(r.at("params"), where + ".params", cfg.defaults);
      cfg.regions.push_back(rect);
    }
  }

  if (!root.contains("founders")) fail("founders", "at least one founder is required");
  {
    const json& founders = root.at("founders");
    if (!founders.is_array() || founders.empty())
      fail("founders", "must be a non-empty array");
    for (size_t i = 0; i < founders.size(); ++i) {
      const std::string where = "founders[" + std::to_string(i) + "]";
      const json& f = founders[i];
      check_keys(f, where, {"a", "b", "c", "row", "col"});
      FounderSpec spec;
      if (!f.contains("a")) fail(where + ".a", "is required");
      spec.genotype.a = get_double(f, where, "a", 0.5);
      spec.genotype.b = get_double(f, where, "b", 0.0);
      spec.genotype.c = get_double(f, where, "c", 0.0);
      spec.cell.row = static_cast<int>(get_int(f, where, "row", 0));
      spec.cell.col = static_cast<int>(get_int(f, where, "col", 0));
      check_unit(spec.genotype.a, where + ".a");
      if (!spec.genotype.valid())
        fail(where, "genotype must satisfy a(1-a) >= b^2 + c^2 (positivity)");
      if (spec.cell.row < 0 || spec.cell.row >= cfg.rows || spec.cell.col < 0 ||
          spec.cell.col >= cfg.cols)
        fail(where, "cell must lie inside the grid");
      cfg.founders.push_back(spec);
    }
  }

  if (root.contains("time")) {
    const json& t = root.at("time");
    check_keys(t, "time", {"dt", "total"});
    cfg.dt = get_double(t, "time", "dt", cfg.dt);
    cfg.total_time = get_double(t, "time", "total", cfg.total_time);
    if (!(cfg.dt > 0)) fail("time.dt", "must be > 0");
    if (cfg.total_time < 0) fail("time.total", "must be >= 0");
    const double steps = cfg.total_time / cfg.dt;
    if (std::abs(steps - std::llround(steps)) * cfg.dt > 1e-9 * std::max(1.0, cfg.total_time))
      fail("time.total", "must be an integer multiple of time.dt");
  }

  cfg.epsilon = get_double(root, "config", "epsilon", cfg.epsilon);
  if (!(cfg.epsilon > 0 && cfg.epsilon <= 2))
    fail("epsilon", "must lie in (0, 2]");

  cfg.qubit_cap = static_cast<int>(get_int(root, "config", "qubit_cap", cfg.qubit_cap));
  if (cfg.qubit_cap < 2) fail("qubit_cap", "must be >= 2");
  if (cfg.qubit_cap < 2 * static_cast<int>(cfg.founders.size()))
    fail("qubit_cap", "must admit all founders (two qubits each)");

  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0 &&
                                   !v.is_number_unsigned()))
      fail("seed", "must be a non-negative integer");
    cfg.seed = v.get<std::uint64_t>();
  }

  cfg.realizations = get_int(root, "config", "realizations", cfg.realizations);
  if (cfg.realizations < 1) fail("realizations", "must be >= 1");

  if (root.contains("move")) {
    const json& m = root.at("move");
    check_keys(m, "move", {"stay", "up", "down", "left", "right"});
    cfg.move.stay = get_double(m, "move", "stay", cfg.move.stay);
    cfg.move.up = get_double(m, "move", "up", cfg.move.up);
    cfg.move.down = get_double(m, "move", "down", cfg.move.down);
    cfg.move.left = get_double(m, "move", "left", cfg.move.left);
    cfg.move.right = get_double(m, "move", "right", cfg.move.right);
    const double vals[] = {cfg.move.stay, cfg.move.up, cfg.move.down, cfg.move.left,
                           cfg.move.right};
    double sum = 0;
    for (double v : vals) {
      if (v < 0) fail("move", "probabilities must be >= 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail("move", "probabilities must sum to 1");
  }

  if (root.contains("toggles")) {
    const json& t = root.at("toggles");
    check_keys(t, "toggles",
               {"interactions", "recycle_dead", "trace_out_dead",
                "include_dead_in_histograms", "track_coherence"});
    cfg.interactions = get_bool(t, "toggles", "interactions", cfg.interactions);
    cfg.recycle_dead = get_bool(t, "toggles", "recycle_dead", cfg.recycle_dead);
    cfg.trace_out_dead = get_bool(t, "toggles", "trace_out_dead", cfg.trace_out_dead);
    cfg.include_dead_in_histograms =
        get_bool(t, "toggles", "include_dead_in_histograms", cfg.include_dead_in_histograms);
    cfg.track_coherence = get_bool(t, "toggles", "track_coherence", cfg.track_coherence);
    if (cfg.recycle_dead && cfg.trace_out_dead)
      fail("toggles", "recycle_dead and trace_out_dead are mutually exclusive");
  }

  if (root.contains("histogram")) {
    const json& h = root.at("histogram");
    check_keys(h, "histogram", {"bins", "peak_threshold"});
    cfg.bin_count = static_cast<int>(get_int(h, "histogram", "bins", cfg.bin_count));
    cfg.peak_threshold = get_double(h, "histogram", "peak_threshold", cfg.peak_threshold);
    if (cfg.bin_count < 3) fail("histogram.bins", "must be >= 3");
    check_unit(cfg.peak_threshold, "histogram.peak_threshold");
  }

  if (root.contains("outputs")) {
    const json& o = root.at("outputs");
    check_keys(o, "outputs", {"histograms", "timeseries", "events"});
    cfg.outputs.histograms = get_bool(o, "outputs", "histograms", cfg.outputs.histograms);
    cfg.outputs.timeseries = get_bool(o, "outputs", "timeseries", cfg.outputs.timeseries);
    cfg.outputs.events = get_bool(o, "outputs", "events", cfg.outputs.events);
  }

  if (root.contains("scripted_events")) {
    const json& evs = root.at("scripted_events");
    if (!evs.is_array()) fail("scripted_events", "must be an array");
    for (size_t i = 0; i < evs.size(); ++i) {
      const std::string where = "scripted_events[" + std::to_string(i) + "]";
      const json& e = evs[i];
      check_keys(e, where, {"time", "kind", "id", "id2", "theta"});
      eco::ScriptedEvent ev;
      ev.time = get_double(e, where, "time", 0.0);
      if (ev.time < 0) fail(where + ".time", "must be >= 0");
      if (!e.contains("kind")) fail(where + ".kind", "is required");
      const json& kind = e.at("kind");
      if (!kind.is_string()) fail(where + ".kind", "must be a string");
      const std::string k = kind.get<std::string>();
      if (k == "mutate")
        ev.kind = eco::ScriptedEvent::Kind::kMutate;
      else if (k == "interact")
        ev.kind = eco::ScriptedEvent::Kind::kInteract;
      else
        fail(where + ".kind", "must be 'mutate' or 'interact'");
      ev.id = static_cast<int>(get_int(e, where, "id", 0));
      ev.id2 = static_cast<int>(get_int(e, where, "id2", ev.kind == eco::ScriptedEvent::Kind::kInteract ? 1 : -1));
      ev.theta = get_double(e, where, "theta", 0.0);
      if (ev.id < 0) fail(where + ".id", "must be >= 0");
      if (ev.kind == eco::ScriptedEvent::Kind::kInteract && ev.id2 < 0)
        fail(where + ".id2", "must be >= 0");
      if (!std::isfinite(ev.theta)) fail(where + ".theta", "must be finite");
      cfg.scripted.push_back(ev);
    }
  }

  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json region_params_json(const eco::RegionParams& p) {
  return json{{"mutation_rate", p.mutation_rate},
              {"replication_prob", p.replication_prob},
              {"gamma", p.gamma},
              {"copy_error_prob", p.copy_error_prob}};
}

}  // namespace

std::string serialize_config(const SimConfig& cfg) {
  json root;
  root["grid"] = json{{"rows", cfg.rows}, {"cols", cfg.cols}};
  root["defaults"] = region_params_json(cfg.defaults);
  json regions = json::array();
  for (const RegionRect& r : cfg.regions)
    regions.push_back(json{{"row0", r.row0},
                           {"col0", r.col0},
                           {"row1", r.row1},
                           {"col1", r.col1},
                           {"params", region_params_json(r.params)}});
  root["regions"] = regions;
  json founders = json::array();
  for (const FounderSpec& f : cfg.founders)
    founders.push_back(json{{"a", f.genotype.a},
                            {"b", f.genotype.b},
                            {"c", f.genotype.c},
                            {"row", f.cell.row},
                            {"col", f.cell.col}});
  root["founders"] = founders;
  root["time"] = json{{"dt", cfg.dt}, {"total", cfg.total_time}};
  root["epsilon"] = cfg.epsilon;
  root["qubit_cap"] = cfg.qubit_cap;
  root["seed"] = cfg.seed;
  root["realizations"] = cfg.realizations;
  root["move"] = json{{"stay", cfg.move.stay},
                      {"up", cfg.move.up},
                      {"down", cfg.move.down},
                      {"left", cfg.move.left},
                      {"right", cfg.move.right}};
  root["toggles"] = json{{"interactions", cfg.interactions},
                         {"recycle_dead", cfg.recycle_dead},
                         {"trace_out_dead", cfg.trace_out_dead},
                         {"include_dead_in_histograms", cfg.include_dead_in_histograms},
                         {"track_coherence", cfg.track_coherence}};
  root["histogram"] = json{{"bins", cfg.bin_count}, {"peak_threshold", cfg.peak_threshold}};
  root["outputs"] = json{{"histograms", cfg.outputs.histograms},
                         {"timeseries", cfg.outputs.timeseries},
                         {"events", cfg.outputs.events}};
  json scripted = json::array();
  for (const eco::ScriptedEvent& e : cfg.scripted)
    scripted.push_back(
        json{{"time", e.time},
             {"kind", e.kind == eco::ScriptedEvent::Kind::kMutate ? "mutate" : "interact"},
             {"id", e.id},
             {"id2", e.id2},
             {"theta", e.theta}});
  root["scripted_events"] = scripted;
  return root.dump(2) + "\n";
}

std::string config_hash(const SimConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

eco::GridSpec make_grid(const SimConfig& cfg) {
  eco::GridSpec grid(cfg.rows, cfg.cols, cfg.defaults);
  for (const RegionRect& r : cfg.regions)
    for (int row = r.row0; row <= r.row1; ++row)
      for (int col = r.col0; col <= r.col1; ++col) grid.at({row, col}) = r.params;
  return grid;
}

eco::WorldParams make_world_params(const SimConfig& cfg) {
  eco::WorldParams wp;
  wp.dt = cfg.dt;
  wp.epsilon = cfg.epsilon;
  wp.qubit_cap = cfg.qubit_cap;
  wp.move = cfg.move;
  wp.interactions = cfg.interactions;
  wp.recycle_dead = cfg.recycle_dead;
  wp.trace_out_dead = cfg.trace_out_dead;
  wp.scripted = cfg.scripted;
  return wp;
}

eco::WorldState make_world(const SimConfig& cfg, std::uint64_t realization_seed) {
  eco::WorldState world(make_grid(cfg), make_world_params(cfg), realization_seed);
  for (const FounderSpec& f : cfg.founders) eco::spawn_primordial(world, f.genotype, f.cell);
  return world;
}

}  // namespace qal::cli
