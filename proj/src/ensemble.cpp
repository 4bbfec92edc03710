#include "qal/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "qal/rng.hpp"
#include "qal/version.hpp"

namespace qal::cli {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RealizationOutput {
  measure::HistogramSet histograms;
  RealizationStats stats;
  std::string events_text;
  std::string timeseries_csv;
  std::string coherence_csv;
  std::exception_ptr error;
};

void append_timeseries(std::string& out, long index, const measure::Snapshot& snap) {
  for (const measure::IndividualReading& r : snap.individuals) {
    out += std::to_string(index);
    out += ',';
    out += fmt("%.6f", snap.time);
    out += ',';
    out += std::to_string(r.id);
    out += ',';
    out += r.alive ? '1' : '0';
    out += ',';
    out += fmt("%.9f", r.sigma_z_g);
    out += ',';
    out += fmt("%.9f", r.sigma_z_p);
    out += '\n';
  }
}

void append_coherence(std::string& out, long index, const measure::Snapshot& snap) {
  out += std::to_string(index);
  out += ',';
  out += fmt("%.6f", snap.time);
  out += ',';
  out += fmt("%.12f", snap.collective_sigma_x);
  out += ',';
  out += std::to_string(snap.num_register_qubits);
  out += '\n';
}

RealizationOutput run_one(const SimConfig& cfg, long index) {
  RealizationOutput out;
  out.histograms = measure::HistogramSet(cfg.rows, cfg.cols, cfg.bin_count);

  eco::WorldState world = make_world(cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
  measure::Snapshot snap = measure::snapshot(world);
  out.histograms.add_positions(snap);
  if (cfg.outputs.timeseries) append_timeseries(out.timeseries_csv, index, snap);
  if (cfg.track_coherence) append_coherence(out.coherence_csv, index, snap);

  const long steps = cfg.steps();
  for (long k = 0; k < steps; ++k) {
    eco::step(world);
    snap = measure::snapshot(world);
    out.histograms.add_positions(snap);
    if (cfg.outputs.timeseries) append_timeseries(out.timeseries_csv, index, snap);
    if (cfg.track_coherence) append_coherence(out.coherence_csv, index, snap);
  }

  out.histograms.accumulate(snap, cfg.include_dead_in_histograms);
  out.histograms.realization_count = 1;

  for (const eco::Event& e : world.events) {
    switch (e.type) {
      case eco::EventType::kInteract: ++out.stats.interactions; break;
      case eco::EventType::kBirth: ++out.stats.births; break;
      case eco::EventType::kDeath: ++out.stats.deaths; break;
      case eco::EventType::kMutate: ++out.stats.mutations; break;
      default: break;
    }
  }
  out.stats.skipped_births = world.skipped_births;
  out.stats.final_total = static_cast<int>(world.individuals.size());
  out.stats.final_live = world.live_count();

  if (cfg.outputs.events) {
    const std::string prefix = "r=" + std::to_string(index) + " ";
    for (const eco::Event& e : world.events) {
      out.events_text += prefix;
      out.events_text += eco::to_line(e);
      out.events_text += '\n';
    }
  }
  return out;
}

}  // namespace

std::string RunManifest::to_text() const {
  std::string out;
  out += "version=" + version + "\n";
  out += "config_hash=" + config_hash + "\n";
  out += "master_seed=" + std::to_string(master_seed) + "\n";
  out += "realizations=" + std::to_string(realizations) + "\n";
  out += "threads=" + std::to_string(threads) + "\n";
  out += "started_at=" + started_at + "\n";
  out += "finished_at=" + finished_at + "\n";
  for (size_t i = 0; i < realization_seeds.size(); ++i)
    out += "seed[" + std::to_string(i) + "]=" + std::to_string(realization_seeds[i]) + "\n";
  return out;
}

EnsembleResult run_ensemble(const SimConfig& cfg, int threads) {
  if (threads < 1) throw ConfigError("threads: must be >= 1");
  const long n = cfg.realizations;
  const int workers = static_cast<int>(std::min<long>(threads, n));

  EnsembleResult result;
  result.manifest.version = kVersion;
  result.manifest.config_hash = config_hash(cfg);
  result.manifest.master_seed = cfg.seed;
  result.manifest.realizations = n;
  result.manifest.threads = workers;
  result.manifest.started_at = now_utc();
  result.manifest.realization_seeds.reserve(n);
  for (long i = 0; i < n; ++i)
    result.manifest.realization_seeds.push_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));

  std::vector<RealizationOutput> slots(n);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i] = run_one(cfg, i);
      } catch (...) {
        slots[i].error = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (long i = 0; i < n; ++i)
    if (slots[i].error) std::rethrow_exception(slots[i].error);

  result.histograms = measure::HistogramSet(cfg.rows, cfg.cols, cfg.bin_count);
  result.stats.reserve(n);
  for (long i = 0; i < n; ++i) {
    result.histograms.merge(slots[i].histograms);
    result.stats.push_back(slots[i].stats);
    result.events_text += slots[i].events_text;
    result.timeseries_csv += slots[i].timeseries_csv;
    result.coherence_csv += slots[i].coherence_csv;
  }
  result.manifest.finished_at = now_utc();
  return result;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  written.push_back(path.filename().string());
}

std::string csv_header(const SimConfig& cfg) {
  return "# config=" + config_hash(cfg) + " seed=" + std::to_string(cfg.seed) +
         " realizations=" + std::to_string(cfg.realizations) + "\n";
}

}  // namespace

std::vector<std::string> write_outputs(const EnsembleResult& result, const SimConfig& cfg,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;

  write_file(fs::path(out_dir) / "manifest.txt", result.manifest.to_text(), written);
  write_file(fs::path(out_dir) / "config.json", serialize_config(cfg), written);

  if (cfg.outputs.histograms) {
    const measure::HistogramSet& h = result.histograms;
    std::string pos = csv_header(cfg) + "row,col,count\n";
    for (int r = 0; r < h.rows; ++r)
      for (int c = 0; c < h.cols; ++c)
        pos += std::to_string(r) + "," + std::to_string(c) + "," +
               std::to_string(h.position[static_cast<size_t>(r) * h.cols + c]) + "\n";
    write_file(fs::path(out_dir) / "position_histogram.csv", pos, written);

    auto value_csv = [&](const std::vector<long>& bins) {
      std::string text = csv_header(cfg) + "bin,center,count\n";
      for (int i = 0; i < h.bin_count; ++i)
        text += std::to_string(i) + "," + fmt("%.6f", measure::bin_center(i, h.bin_count)) +
                "," + std::to_string(bins[i]) + "\n";
      return text;
    };
    write_file(fs::path(out_dir) / "genotype_histogram.csv", value_csv(h.genotype), written);
    write_file(fs::path(out_dir) / "phenotype_histogram.csv", value_csv(h.phenotype), written);
    if (cfg.track_coherence)
      write_file(fs::path(out_dir) / "coherence_histogram.csv", value_csv(h.coherence), written);
  }

  if (cfg.outputs.timeseries)
    write_file(fs::path(out_dir) / "timeseries.csv",
               csv_header(cfg) + "realization,time,id,alive,sigma_z_g,sigma_z_p\n" +
                   result.timeseries_csv,
               written);
  if (cfg.track_coherence)
    write_file(fs::path(out_dir) / "coherence.csv",
               csv_header(cfg) + "realization,time,collective_sigma_x,register_qubits\n" +
                   result.coherence_csv,
               written);
  if (cfg.outputs.events)
    write_file(fs::path(out_dir) / "events.log", result.events_text, written);

  return written;
}

}  // namespace qal::cli
