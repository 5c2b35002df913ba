#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "neatbird/harness.hpp"

namespace fs = std::filesystem;
using namespace neatbird;

namespace {

std::string default_out() {
    const char* env = std::getenv("NEATBIRD_OUT");
    return env ? env : "out";
}

struct ChampionFile {
    Genome genome;
    std::uint64_t episode_seed = 0;
    std::int64_t score = 0;
};

void write_champion(const ChampionFile& champ, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "EpisodeSeed " << champ.episode_seed << '\n'
        << "Score " << champ.score << '\n'
        << serialize_genome(champ.genome);
}

ChampionFile load_champion(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read champion file: " + path);
    ChampionFile champ;
    std::ostringstream genome_text;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "EpisodeSeed") {
            ss >> champ.episode_seed;
        } else if (tag == "Score") {
            ss >> champ.score;
        } else {
            genome_text << line << '\n';
        }
    }
    try {
        champ.genome = parse_genome(genome_text.str());
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed champion file " + path + ": " +
                                    e.what());
    }
    return champ;
}

void add_evo_options(CLI::App* cmd, EvolutionConfig& evo, std::string& selection) {
    cmd->add_option("--elitism", evo.elitism_count, "Elites copied unchanged");
    cmd->add_option("--selection", selection,
                    "Parent selection: proportionate or tournament");
    cmd->add_option("--tournament-size", evo.tournament_size, "Tournament size");
    cmd->add_option("--weight-mutation-rate", evo.mutation_params.weight_mutation_rate,
                    "Per-connection weight mutation probability");
    cmd->add_option("--weight-sigma", evo.mutation_params.weight_sigma,
                    "Weight perturbation sigma");
    cmd->add_option("--add-connection-rate", evo.mutation_params.add_connection_rate,
                    "Add-connection probability");
    cmd->add_option("--add-node-rate", evo.mutation_params.add_node_rate,
                    "Add-node probability");
    cmd->add_option("--toggle-enable-rate", evo.mutation_params.toggle_enable_rate,
                    "Toggle-enable probability");
    cmd->add_option("--episodes-per-eval", evo.episodes_per_eval,
                    "Episodes averaged per fitness evaluation");
}

void apply_selection(EvolutionConfig& evo, const std::string& selection) {
    if (selection == "proportionate")
        evo.selection = SelectionScheme::FitnessProportionate;
    else if (selection == "tournament")
        evo.selection = SelectionScheme::Tournament;
    else
        throw std::invalid_argument("unknown selection scheme `" + selection + "`");
}

void apply_seed_policy(EvolutionConfig& evo, const std::string& policy) {
    if (policy == "per-generation")
        evo.episode_seed_policy = EpisodeSeedPolicy::FixedPerGeneration;
    else if (policy == "global")
        evo.episode_seed_policy = EpisodeSeedPolicy::FixedGlobal;
    else
        throw std::invalid_argument("unknown seed policy `" + policy + "`");
}

void print_resolved(const EvolutionConfig& evo, const WorldConfig& world) {
    std::cout << "population_size = " << evo.population_size << '\n'
              << "generations = " << evo.generations << '\n'
              << "elitism_count = " << evo.elitism_count << '\n'
              << "selection = "
              << (evo.selection == SelectionScheme::Tournament ? "tournament"
                                                               : "proportionate")
              << '\n'
              << "episode_seed_policy = "
              << (evo.episode_seed_policy == EpisodeSeedPolicy::FixedGlobal
                      ? "global"
                      : "per-generation")
              << '\n'
              << "master_seed = " << evo.master_seed << '\n'
              << "weight_mutation_rate = " << evo.mutation_params.weight_mutation_rate
              << '\n'
              << "gravity_accel = " << world.gravity_accel << '\n'
              << "jump_velocity = " << world.jump_velocity << '\n'
              << "scroll_velocity = " << world.scroll_velocity << '\n'
              << "pipe_gap = " << world.pipe_gap << '\n'
              << "max_score_cap = " << world.max_score_cap << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NEAT Flappy Bird evolution harness"};
    app.require_subcommand(1);

    std::string out_dir = default_out();
    std::string world_config_path;
    bool dry_run = false;
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--world-config", world_config_path,
                   "World config file (key = value lines)");
    app.add_flag("--dry-run", dry_run, "Validate configs and print them");

    // run
    auto* run_cmd = app.add_subcommand("run", "Run a single evolution");
    EvolutionConfig run_evo;
    std::string run_selection = "proportionate", run_seed_policy = "per-generation";
    run_cmd->add_option("--population", run_evo.population_size, "Population size");
    run_cmd->add_option("--generations", run_evo.generations, "Generations");
    run_cmd->add_option("--master-seed", run_evo.master_seed, "Master seed");
    run_cmd->add_option("--seed-policy", run_seed_policy,
                        "Episode seeding: per-generation or global");
    std::string champion_out;
    run_cmd->add_option("--dump-champion", champion_out,
                        "Champion file path (default <out>/champion.txt)");
    add_evo_options(run_cmd, run_evo, run_selection);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Population-size sweep");
    SweepSpec spec;
    int sweep_seed_count = 5;
    std::string sweep_id = "sweep";
    std::string sweep_selection = "proportionate", sweep_seed_policy = "per-generation";
    sweep_cmd->add_option("--populations", spec.population_sizes,
                          "Population sizes to sweep");
    sweep_cmd->add_option("--generations", spec.generations, "Generations per run");
    sweep_cmd->add_option("--seeds", sweep_seed_count, "Number of master seeds");
    sweep_cmd->add_option("--sweep-id", sweep_id, "Subdirectory name under --out");
    add_evo_options(sweep_cmd, spec.evo_template, sweep_selection);

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Replay a dumped champion");
    std::string champion_path;
    std::uint64_t replay_seed = 0;
    replay_cmd->add_option("--champion", champion_path, "Champion file")->required();
    auto* replay_seed_opt = replay_cmd->add_option(
        "--seed", replay_seed, "Episode seed (default: the champion's recorded seed)");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "Render a CSV as an SVG chart");
    std::string plot_csv, plot_out;
    std::vector<std::string> plot_columns = {"average_score", "max_score"};
    plot_cmd->add_option("--csv", plot_csv, "Input CSV")->required();
    plot_cmd->add_option("--columns", plot_columns, "Columns to plot");
    plot_cmd->add_option("--out-svg", plot_out, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        WorldConfig world;
        if (!world_config_path.empty()) world = load_world_config(world_config_path);

        if (run_cmd->parsed()) {
            apply_selection(run_evo, run_selection);
            apply_seed_policy(run_evo, run_seed_policy);
            run_evo.validate();
            world.validate();
            if (dry_run) {
                print_resolved(run_evo, world);
                return 0;
            }
            fs::create_directories(out_dir);
            RunResult result = run_evolution(run_evo, world);
            write_generation_csv(result, out_dir + "/run.csv");
            emit_line_chart(out_dir + "/run.csv", {"average_score", "max_score"},
                            out_dir + "/run.svg");
            write_champion({result.champion, result.champion_episode_seed,
                            result.champion_score},
                           champion_out.empty() ? out_dir + "/champion.txt"
                                                : champion_out);
            std::cout << "best score " << result.champion_score << " (seed "
                      << result.champion_episode_seed << "), outputs in " << out_dir
                      << '\n';
        } else if (sweep_cmd->parsed()) {
            apply_selection(spec.evo_template, sweep_selection);
            apply_seed_policy(spec.evo_template, sweep_seed_policy);
            spec.world_config = world;
            spec.seeds.clear();
            for (int s = 1; s <= sweep_seed_count; ++s)
                spec.seeds.push_back(static_cast<std::uint64_t>(s));
            spec.validate();
            if (dry_run) {
                print_resolved(spec.evo_template, world);
                std::cout << "populations =";
                for (int p : spec.population_sizes) std::cout << ' ' << p;
                std::cout << "\nseeds = " << sweep_seed_count << '\n';
                return 0;
            }
            std::string dir = out_dir + "/" + sweep_id;
            fs::create_directories(dir);
            SweepReport report = run_sweep(
                spec, [&](const RunResult& run, const SweepCell& cell) {
                    std::string stem = dir + "/pop" +
                                       std::to_string(cell.population_size) +
                                       "_seed" + std::to_string(cell.seed);
                    write_generation_csv(run, stem + ".csv");
                    emit_line_chart(stem + ".csv", {"average_score", "max_score"},
                                    stem + ".svg");
                    write_champion({run.champion, run.champion_episode_seed,
                                    run.champion_score},
                                   dir + "/champion_pop" +
                                       std::to_string(cell.population_size) +
                                       "_seed" + std::to_string(cell.seed) + ".txt");
                });
            write_sweep_summary(report, dir + "/summary.csv");
            emit_line_chart(dir + "/summary.csv",
                            {"median_average_score", "median_max_score"},
                            dir + "/summary.svg");
            std::cout << "sweep outputs in " << dir << '\n';
        } else if (replay_cmd->parsed()) {
            ChampionFile champ = load_champion(champion_path);
            std::uint64_t seed =
                replay_seed_opt->count() > 0 ? replay_seed : champ.episode_seed;
            world.validate();
            double scale = 1.0 / world.screen_height;
            EpisodeResult ep = run_episode(world, seed, [&](const Observation& obs) {
                return decide(champ.genome, obs, scale);
            });
            std::cout << "score " << ep.score << " frames " << ep.frames << " end "
                      << to_string(ep.end) << '\n';
        } else if (plot_cmd->parsed()) {
            if (plot_out.empty()) plot_out = plot_csv + ".svg";
            emit_line_chart(plot_csv, plot_columns, plot_out);
            std::cout << "wrote " << plot_out << '\n';
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
