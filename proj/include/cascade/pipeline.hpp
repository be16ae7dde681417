#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cascade {

// Everything the batch driver needs; field names double as the config-file
// keys (dashes in flags map to underscores here).
struct PipelineConfig {
  std::string posts;     // raw post dump, needed by the ingest stage
  std::string comments;  // raw comment dump
  std::string events;    // pre-ingested events file, used when ingest is off
  std::string bots = "AutoModerator";
  std::string lexicon;
  std::string domain_map;
  std::string out_dir = "out";
  std::string stages = "all";
  std::string positive = "conspiracy";
  std::string grid = "0:0.5:0.005";
  uint64_t vocab_cap = 10000;
  int topics = 20;
  int lda_iterations = 1000;
  double lda_alpha = 0.0;  // 0 selects 50/k
  double lda_beta = 0.01;
  int forest_trees = 200;
  int trials = 10;
  double split = 0.8;
  uint64_t seed = 1;
  int threads = 0;  // 0 selects the environment/hardware default
};

// key = value lines, '#' comments, unknown keys rejected with line numbers.
PipelineConfig load_pipeline_config(const std::string& path);

// One "key=value" override, same keys as the config file.
void apply_config_override(PipelineConfig& cfg, const std::string& assignment);

// The stage list in execution order, validated against the stage and input
// requirements. Throws std::invalid_argument on bad configuration; checking
// happens before any work.
std::vector<std::string> resolve_stages(const PipelineConfig& cfg);

// Runs the enabled stages and writes out_dir/manifest.json. Throws on stage
// failure with a stage-tagged message; outputs are written atomically so a
// failed stage leaves no partial file behind.
void run_pipeline(const PipelineConfig& cfg);

}  // namespace cascade
