#pragma once

#include <cstdint>
#include <vector>

#include "neatbird/genome.hpp"
#include "neatbird/world.hpp"

namespace neatbird {

enum class SelectionScheme { FitnessProportionate, Tournament };

enum class EpisodeSeedPolicy { FixedPerGeneration, FixedGlobal };

struct EvolutionConfig {
    int population_size = 100;
    int generations = 50;
    int elitism_count = 2;
    SelectionScheme selection = SelectionScheme::FitnessProportionate;
    int tournament_size = 3;
    MutationParams mutation_params;
    EpisodeSeedPolicy episode_seed_policy = EpisodeSeedPolicy::FixedPerGeneration;
    std::uint64_t master_seed = 0;
    int episodes_per_eval = 1;

    void validate() const;
};

struct EvalResult {
    double fitness = 0.0;
    std::int64_t score = 0;
    std::int64_t frames = 0;
};

struct GenerationStats {
    int generation_index = 0;
    std::int64_t max_score = 0;
    double average_score = 0.0;
    double average_fitness = 0.0;
    Genome best_genome_snapshot;
};

struct RunResult {
    std::vector<GenerationStats> stats;
    Genome champion;
    std::uint64_t champion_episode_seed = 0;  // seed the champion was scored on
    std::int64_t champion_score = 0;
    EvolutionConfig evo_config;
    WorldConfig world_config;
};

std::vector<Genome> init_population(const EvolutionConfig& config, Rng& rng);

// Every genome plays the same pipe sequence. Fitness is pipes crossed plus
// frames/1e6 as a tie-break; the reported score excludes that term.
std::vector<EvalResult> evaluate_population(const std::vector<Genome>& pop,
                                            const WorldConfig& world_config,
                                            std::uint64_t episode_seed,
                                            int episodes_per_eval = 1);

std::vector<Genome> next_generation(const std::vector<Genome>& pop,
                                    const std::vector<EvalResult>& evals,
                                    const EvolutionConfig& config, Rng& rng,
                                    InnovationTracker& tracker);

RunResult run_evolution(const EvolutionConfig& evo_config,
                        const WorldConfig& world_config);

std::uint64_t episode_seed_for(const EvolutionConfig& config, int generation);

}  // namespace neatbird
