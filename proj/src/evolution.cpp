#include "neatbird/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace neatbird {

void EvolutionConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("EvolutionConfig." + field + ": " + why);
    };
    if (population_size < 2) fail("population_size", "must be at least 2");
    if (generations < 1) fail("generations", "must be at least 1");
    if (elitism_count < 0) fail("elitism_count", "must be non-negative");
    if (elitism_count >= population_size)
        fail("elitism_count", "must be less than population_size");
    if (tournament_size < 1) fail("tournament_size", "must be at least 1");
    if (episodes_per_eval < 1) fail("episodes_per_eval", "must be at least 1");
}

std::uint64_t episode_seed_for(const EvolutionConfig& config, int generation) {
    switch (config.episode_seed_policy) {
        case EpisodeSeedPolicy::FixedGlobal:
            return Rng::mix(config.master_seed, 0xE915ULL);
        case EpisodeSeedPolicy::FixedPerGeneration:
            return Rng::mix(config.master_seed,
                            0xE915ULL + static_cast<std::uint64_t>(generation) + 1);
    }
    return config.master_seed;
}

std::vector<Genome> init_population(const EvolutionConfig& config, Rng& rng) {
    config.validate();
    std::vector<Genome> pop;
    pop.reserve(config.population_size);
    for (int i = 0; i < config.population_size; ++i) {
        Genome g;
        g.nodes = {
            {1, NodeRole::Input, 0.0},
            {2, NodeRole::Input, 0.0},
            {3, NodeRole::Input, 0.0},
            {4, NodeRole::Output, 0.0},
        };
        for (int in = 1; in <= 3; ++in)
            g.connections.push_back(
                ConnectionGene{rng.uniform(-1.0, 1.0), in, 4, true, in});
        pop.push_back(std::move(g));
    }
    return pop;
}

std::vector<EvalResult> evaluate_population(const std::vector<Genome>& pop,
                                            const WorldConfig& world_config,
                                            std::uint64_t episode_seed,
                                            int episodes_per_eval) {
    double scale = 1.0 / world_config.screen_height;
    std::vector<EvalResult> results(pop.size());
    for (size_t i = 0; i < pop.size(); ++i) {
        const Genome& g = pop[i];
        Policy policy = [&g, scale](const Observation& obs) {
            return decide(g, obs, scale);
        };
        double fitness_sum = 0.0;
        std::int64_t score_sum = 0, frames_sum = 0;
        for (int k = 0; k < episodes_per_eval; ++k) {
            std::uint64_t seed =
                k == 0 ? episode_seed : Rng::mix(episode_seed, static_cast<std::uint64_t>(k));
            EpisodeResult ep = run_episode(world_config, seed, policy);
            fitness_sum += static_cast<double>(ep.score) + ep.frames * 1e-6;
            score_sum += ep.score;
            frames_sum += ep.frames;
        }
        results[i].fitness = fitness_sum / episodes_per_eval;
        results[i].score = score_sum / episodes_per_eval;
        results[i].frames = frames_sum / episodes_per_eval;
    }
    return results;
}

namespace {

size_t select_parent(const std::vector<double>& fitnesses,
                     const EvolutionConfig& config, Rng& rng) {
    if (config.selection == SelectionScheme::Tournament) {
        size_t best = rng.uniform_index(fitnesses.size());
        for (int i = 1; i < config.tournament_size; ++i) {
            size_t cand = rng.uniform_index(fitnesses.size());
            if (fitnesses[cand] > fitnesses[best]) best = cand;
        }
        return best;
    }
    double total = std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0);
    if (total <= 0.0) return rng.uniform_index(fitnesses.size());
    double target = rng.next_double() * total;
    double running = 0.0;
    for (size_t i = 0; i < fitnesses.size(); ++i) {
        running += fitnesses[i];
        if (target < running) return i;
    }
    return fitnesses.size() - 1;
}

}  // namespace

std::vector<Genome> next_generation(const std::vector<Genome>& pop,
                                    const std::vector<EvalResult>& evals,
                                    const EvolutionConfig& config, Rng& rng,
                                    InnovationTracker& tracker) {
    if (pop.size() != evals.size())
        throw std::invalid_argument("population and fitness lists differ in size");

    std::vector<double> fitnesses(pop.size());
    for (size_t i = 0; i < pop.size(); ++i) fitnesses[i] = evals[i].fitness;

    std::vector<size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return fitnesses[a] > fitnesses[b];
    });

    tracker.begin_generation();
    std::vector<Genome> next;
    next.reserve(pop.size());
    for (int i = 0; i < config.elitism_count; ++i) {
        next.push_back(pop[order[i]]);
        next.back().fitness = fitnesses[order[i]];
    }
    while (next.size() < pop.size()) {
        size_t ia = select_parent(fitnesses, config, rng);
        size_t ib = select_parent(fitnesses, config, rng);
        Genome a = pop[ia];
        a.fitness = fitnesses[ia];
        Genome b = pop[ib];
        b.fitness = fitnesses[ib];
        Genome child = crossover(a, b, rng);
        next.push_back(mutate(child, rng, config.mutation_params, tracker));
    }
    return next;
}

RunResult run_evolution(const EvolutionConfig& evo_config,
                        const WorldConfig& world_config) {
    evo_config.validate();
    world_config.validate();

    Rng rng(Rng::mix(evo_config.master_seed, 0x6E76ULL));
    InnovationTracker tracker;
    std::vector<Genome> pop = init_population(evo_config, rng);

    RunResult result;
    result.evo_config = evo_config;
    result.world_config = world_config;

    double best_fitness = -1.0;
    for (int gen = 0; gen < evo_config.generations; ++gen) {
        std::uint64_t seed = episode_seed_for(evo_config, gen);
        auto evals = evaluate_population(pop, world_config, seed,
                                         evo_config.episodes_per_eval);

        GenerationStats stats;
        stats.generation_index = gen;
        size_t best = 0;
        for (size_t i = 0; i < evals.size(); ++i) {
            stats.max_score = std::max(stats.max_score, evals[i].score);
            stats.average_score += static_cast<double>(evals[i].score);
            stats.average_fitness += evals[i].fitness;
            if (evals[i].fitness > evals[best].fitness) best = i;
        }
        stats.average_score /= static_cast<double>(evals.size());
        stats.average_fitness /= static_cast<double>(evals.size());
        stats.best_genome_snapshot = pop[best];
        stats.best_genome_snapshot.fitness = evals[best].fitness;
        result.stats.push_back(stats);

        if (evals[best].fitness > best_fitness) {
            best_fitness = evals[best].fitness;
            result.champion = stats.best_genome_snapshot;
            result.champion_episode_seed = seed;
            result.champion_score = evals[best].score;
        }

        if (gen + 1 < evo_config.generations)
            pop = next_generation(pop, evals, evo_config, rng, tracker);
    }
    return result;
}

}  // namespace neatbird
