"""Smoke tests for the python bindings."""

try:
    import neatbird as nb
except ImportError:  # build-tree module, not yet installed as a package
    import _core as nb


def minimal_genome(w1, w2, w3):
    g = nb.Genome()
    g.nodes = [
        nb.NodeGene(1, nb.NodeRole.Input),
        nb.NodeGene(2, nb.NodeRole.Input),
        nb.NodeGene(3, nb.NodeRole.Input),
        nb.NodeGene(4, nb.NodeRole.Output),
    ]
    g.connections = [
        nb.ConnectionGene(w1, 1, 4, True, 1),
        nb.ConnectionGene(w2, 2, 4, True, 2),
        nb.ConnectionGene(w3, 3, 4, True, 3),
    ]
    return g


def test_episode_with_python_policy():
    cfg = nb.WorldConfig()
    result = nb.run_episode(cfg, 7, lambda obs: nb.Action.NoFlap)
    assert result.score == 0
    assert result.end == nb.CollisionKind.GroundHit
    assert result.frames > 0


def test_world_step_and_observe():
    cfg = nb.WorldConfig()
    world = nb.WorldState(cfg, 3)
    obs = world.observe()
    assert obs.dist_to_top + obs.dist_to_bottom == cfg.pipe_gap
    world.step(nb.Action.Flap)
    assert world.tick == 1


def test_activate_and_decide():
    g = minimal_genome(0.0, 0.0, 0.0)
    assert nb.activate(g, [1.0, 2.0, 3.0]) == 0.0
    obs = nb.Observation()
    obs.bird_y, obs.dist_to_top, obs.dist_to_bottom = 400.0, 100.0, 220.0
    assert nb.decide(g, obs, 1.0 / 800.0) == nb.Action.NoFlap
    g2 = minimal_genome(0.0, 0.0, 1.0)
    assert nb.decide(g2, obs, 1.0 / 800.0) == nb.Action.Flap


def test_genome_serialization_round_trip():
    g = minimal_genome(0.25, -0.5, 0.75)
    text = nb.serialize_genome(g)
    back = nb.parse_genome(text)
    assert nb.serialize_genome(back) == text
    assert text.splitlines()[2].startswith("Weight ")


def test_run_evolution_deterministic():
    evo = nb.EvolutionConfig()
    evo.population_size = 8
    evo.generations = 3
    evo.master_seed = 42
    world = nb.WorldConfig()
    world.max_score_cap = 20
    a = nb.run_evolution(evo, world)
    b = nb.run_evolution(evo, world)
    assert len(a.stats) == 3
    assert [s.max_score for s in a.stats] == [s.max_score for s in b.stats]
    assert nb.serialize_genome(a.champion) == nb.serialize_genome(b.champion)


def test_sweep_report_shape():
    spec = nb.SweepSpec()
    spec.population_sizes = [4, 6]
    spec.generations = 2
    spec.seeds = [1, 2]
    world = nb.WorldConfig()
    world.max_score_cap = 10
    spec.world_config = world
    report = nb.run_sweep(spec)
    assert len(report.cells) == 4
    assert len(report.summary) == 2
    assert [r.population_size for r in report.summary] == [4, 6]
