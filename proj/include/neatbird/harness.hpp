#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "neatbird/evolution.hpp"

namespace neatbird {

struct SweepSpec {
    std::vector<int> population_sizes = {20, 40, 60, 80, 100, 120, 140, 160};
    int generations = 50;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    EvolutionConfig evo_template;
    WorldConfig world_config;

    void validate() const;
};

struct SweepCell {
    int population_size = 0;
    std::uint64_t seed = 0;
    double average_score = 0.0;  // mean of per-generation average scores
    std::int64_t max_score = 0;
    int first_spike_generation = -1;  // -1 when no spike observed
};

struct SweepSummaryRow {
    int population_size = 0;
    double median_average_score = 0.0;
    double median_max_score = 0.0;
    double median_first_spike_generation = -1.0;
};

struct SweepReport {
    std::vector<SweepCell> cells;
    std::vector<SweepSummaryRow> summary;
};

// Earliest generation whose average score reaches 5x the generation-0
// average (and is positive); -1 when never reached.
int first_spike_generation(const std::vector<GenerationStats>& stats);

SweepCell summarize_run(const RunResult& run, int population_size,
                        std::uint64_t seed);

using SweepCellObserver =
    std::function<void(const RunResult&, const SweepCell&)>;

SweepReport run_sweep(const SweepSpec& spec, const SweepCellObserver& on_cell = {});

// Header `generation,max_score,average_score,average_fitness`, one row per
// generation, 6-decimal reals, LF line endings.
void write_generation_csv(const RunResult& run, const std::string& path);

// Columns `population,median_average_score,median_max_score,first_spike_generation`.
void write_sweep_summary(const SweepReport& report, const std::string& path);

// Self-contained SVG line chart, one polyline per requested column.
// Throws on missing columns or empty data; writes nothing on error.
void emit_line_chart(const std::string& csv_path,
                     const std::vector<std::string>& columns,
                     const std::string& path);

double median(std::vector<double> values);

}  // namespace neatbird
