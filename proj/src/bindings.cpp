#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neatbird/harness.hpp"

namespace py = pybind11;
using namespace neatbird;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Headless Flappy Bird environment with NEAT evolution";

    py::enum_<Action>(m, "Action")
        .value("NoFlap", Action::NoFlap)
        .value("Flap", Action::Flap);

    py::enum_<CollisionKind>(m, "CollisionKind")
        .value("NONE", CollisionKind::None)
        .value("PipeHit", CollisionKind::PipeHit)
        .value("RoofHit", CollisionKind::RoofHit)
        .value("GroundHit", CollisionKind::GroundHit)
        .value("ScoreCapReached", CollisionKind::ScoreCapReached);

    py::class_<WorldConfig>(m, "WorldConfig")
        .def(py::init<>())
        .def_readwrite("gravity_accel", &WorldConfig::gravity_accel)
        .def_readwrite("jump_velocity", &WorldConfig::jump_velocity)
        .def_readwrite("scroll_velocity", &WorldConfig::scroll_velocity)
        .def_readwrite("pipe_gap", &WorldConfig::pipe_gap)
        .def_readwrite("pipe_spacing", &WorldConfig::pipe_spacing)
        .def_readwrite("screen_height", &WorldConfig::screen_height)
        .def_readwrite("screen_width", &WorldConfig::screen_width)
        .def_readwrite("bird_x", &WorldConfig::bird_x)
        .def_readwrite("bird_radius", &WorldConfig::bird_radius)
        .def_readwrite("pipe_width", &WorldConfig::pipe_width)
        .def_readwrite("gap_center_min", &WorldConfig::gap_center_min)
        .def_readwrite("gap_center_max", &WorldConfig::gap_center_max)
        .def_readwrite("max_score_cap", &WorldConfig::max_score_cap)
        .def("validate", &WorldConfig::validate);

    py::class_<Observation>(m, "Observation")
        .def(py::init<>())
        .def_readwrite("bird_y", &Observation::bird_y)
        .def_readwrite("dist_to_top", &Observation::dist_to_top)
        .def_readwrite("dist_to_bottom", &Observation::dist_to_bottom);

    py::class_<WorldState>(m, "WorldState")
        .def(py::init<const WorldConfig&, std::uint64_t>(), py::arg("config"),
             py::arg("seed"))
        .def("step", &WorldState::step)
        .def("observe", &WorldState::observe)
        .def_property_readonly("tick", &WorldState::tick)
        .def_property_readonly("score", &WorldState::score)
        .def_property_readonly("terminal", &WorldState::terminal)
        .def_property_readonly("terminal_kind", &WorldState::terminal_kind);

    py::class_<EpisodeResult>(m, "EpisodeResult")
        .def_readonly("score", &EpisodeResult::score)
        .def_readonly("frames", &EpisodeResult::frames)
        .def_readonly("end", &EpisodeResult::end);

    m.def("run_episode", &run_episode, py::arg("config"), py::arg("seed"),
          py::arg("policy"));
    m.def("load_world_config", &load_world_config);

    py::enum_<NodeRole>(m, "NodeRole")
        .value("Input", NodeRole::Input)
        .value("Hidden", NodeRole::Hidden)
        .value("Output", NodeRole::Output);

    py::class_<NodeGene>(m, "NodeGene")
        .def(py::init<int, NodeRole, double>(), py::arg("id"), py::arg("role"),
             py::arg("bias") = 0.0)
        .def_readwrite("id", &NodeGene::id)
        .def_readwrite("role", &NodeGene::role)
        .def_readwrite("bias", &NodeGene::bias);

    py::class_<ConnectionGene>(m, "ConnectionGene")
        .def(py::init<double, int, int, bool, std::int64_t>(), py::arg("weight"),
             py::arg("from_node"), py::arg("to_node"), py::arg("enabled") = true,
             py::arg("innovation") = 0)
        .def_readwrite("weight", &ConnectionGene::weight)
        .def_readwrite("from_node", &ConnectionGene::from)
        .def_readwrite("to_node", &ConnectionGene::to)
        .def_readwrite("enabled", &ConnectionGene::enabled)
        .def_readwrite("innovation", &ConnectionGene::innovation);

    py::class_<Genome>(m, "Genome")
        .def(py::init<>())
        .def_readwrite("nodes", &Genome::nodes)
        .def_readwrite("connections", &Genome::connections)
        .def_readwrite("fitness", &Genome::fitness)
        .def("validate", &Genome::validate);

    m.def("activate", &activate, py::arg("genome"), py::arg("inputs"));
    m.def("decide", &decide, py::arg("genome"), py::arg("observation"),
          py::arg("input_scale"));
    m.def("serialize_genome", &serialize_genome);
    m.def("parse_genome", &parse_genome);

    py::enum_<SelectionScheme>(m, "SelectionScheme")
        .value("FitnessProportionate", SelectionScheme::FitnessProportionate)
        .value("Tournament", SelectionScheme::Tournament);

    py::enum_<EpisodeSeedPolicy>(m, "EpisodeSeedPolicy")
        .value("FixedPerGeneration", EpisodeSeedPolicy::FixedPerGeneration)
        .value("FixedGlobal", EpisodeSeedPolicy::FixedGlobal);

    py::class_<MutationParams>(m, "MutationParams")
        .def(py::init<>())
        .def_readwrite("weight_mutation_rate", &MutationParams::weight_mutation_rate)
        .def_readwrite("weight_sigma", &MutationParams::weight_sigma)
        .def_readwrite("add_connection_rate", &MutationParams::add_connection_rate)
        .def_readwrite("add_node_rate", &MutationParams::add_node_rate)
        .def_readwrite("toggle_enable_rate", &MutationParams::toggle_enable_rate);

    py::class_<EvolutionConfig>(m, "EvolutionConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &EvolutionConfig::population_size)
        .def_readwrite("generations", &EvolutionConfig::generations)
        .def_readwrite("elitism_count", &EvolutionConfig::elitism_count)
        .def_readwrite("selection", &EvolutionConfig::selection)
        .def_readwrite("tournament_size", &EvolutionConfig::tournament_size)
        .def_readwrite("mutation_params", &EvolutionConfig::mutation_params)
        .def_readwrite("episode_seed_policy", &EvolutionConfig::episode_seed_policy)
        .def_readwrite("master_seed", &EvolutionConfig::master_seed)
        .def_readwrite("episodes_per_eval", &EvolutionConfig::episodes_per_eval)
        .def("validate", &EvolutionConfig::validate);

    py::class_<GenerationStats>(m, "GenerationStats")
        .def_readonly("generation_index", &GenerationStats::generation_index)
        .def_readonly("max_score", &GenerationStats::max_score)
        .def_readonly("average_score", &GenerationStats::average_score)
        .def_readonly("average_fitness", &GenerationStats::average_fitness)
        .def_readonly("best_genome_snapshot", &GenerationStats::best_genome_snapshot);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("stats", &RunResult::stats)
        .def_readonly("champion", &RunResult::champion)
        .def_readonly("champion_episode_seed", &RunResult::champion_episode_seed)
        .def_readonly("champion_score", &RunResult::champion_score);

    m.def("run_evolution", &run_evolution, py::arg("evo_config"),
          py::arg("world_config"));

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("population_size", &SweepCell::population_size)
        .def_readonly("seed", &SweepCell::seed)
        .def_readonly("average_score", &SweepCell::average_score)
        .def_readonly("max_score", &SweepCell::max_score)
        .def_readonly("first_spike_generation", &SweepCell::first_spike_generation);

    py::class_<SweepSummaryRow>(m, "SweepSummaryRow")
        .def_readonly("population_size", &SweepSummaryRow::population_size)
        .def_readonly("median_average_score", &SweepSummaryRow::median_average_score)
        .def_readonly("median_max_score", &SweepSummaryRow::median_max_score)
        .def_readonly("median_first_spike_generation",
                      &SweepSummaryRow::median_first_spike_generation);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("population_sizes", &SweepSpec::population_sizes)
        .def_readwrite("generations", &SweepSpec::generations)
        .def_readwrite("seeds", &SweepSpec::seeds)
        .def_readwrite("evo_template", &SweepSpec::evo_template)
        .def_readwrite("world_config", &SweepSpec::world_config);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("cells", &SweepReport::cells)
        .def_readonly("summary", &SweepReport::summary);

    m.def(
        "run_sweep",
        [](const SweepSpec& spec) { return run_sweep(spec); },
        py::arg("spec"));
    m.def("write_generation_csv", &write_generation_csv);
    m.def("write_sweep_summary", &write_sweep_summary);
    m.def("emit_line_chart", &emit_line_chart, py::arg("csv_path"),
          py::arg("columns"), py::arg("path"));
}
