#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "neatbird/genome.hpp"

using namespace neatbird;

namespace {

// The worked 4-node encoding example (an encoding illustration, not a
// playable genome: roles left Hidden, recurrent edges allowed while disabled).
std::vector<NodeGene> example_nodes() {
    return {{1, NodeRole::Hidden, 0.0},
            {2, NodeRole::Hidden, 0.0},
            {3, NodeRole::Hidden, 0.0},
            {4, NodeRole::Hidden, 0.0}};
}

ChromosomeTable table_before() {
    return ChromosomeTable{{0.25, 2.31, 1.55, 0.98, 5.11, 1.17, 0.07},
                           {1, 2, 3, 1, 3, 4, 2},
                           {2, 3, 2, 3, 4, 3, 4},
                           {1, 0, 1, 1, 1, 1, 1}};
}

ChromosomeTable table_after() {
    return ChromosomeTable{{0.25, 5.11, 1.17, 0.98, 2.31, 1.55, 0.07},
                           {1, 2, 4, 1, 3, 3, 4},
                           {3, 4, 2, 4, 2, 4, 3},
                           {1, 1, 1, 0, 1, 1, 0}};
}

Genome minimal_genome(double w1, double w2, double w3, double bias = 0.0) {
    Genome g;
    g.nodes = {{1, NodeRole::Input, 0.0},
               {2, NodeRole::Input, 0.0},
               {3, NodeRole::Input, 0.0},
               {4, NodeRole::Output, bias}};
    g.connections = {{w1, 1, 4, true, 1}, {w2, 2, 4, true, 2}, {w3, 3, 4, true, 3}};
    return g;
}

// Random valid genome: minimal topology grown by random legal mutations.
Genome random_genome(Rng& rng, InnovationTracker& tracker, int growth_steps = 4) {
    Genome g = minimal_genome(rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1), rng.uniform(-1, 1));
    MutationParams grow;
    grow.weight_mutation_rate = 0.5;
    grow.bias_mutation_rate = 0.5;
    grow.add_connection_rate = 0.5;
    grow.add_node_rate = 0.5;
    grow.toggle_enable_rate = 0.2;
    for (int i = 0; i < growth_steps; ++i) g = mutate(g, rng, grow, tracker);
    return g;
}

// Independent reference evaluator: memoized recursion from the output node.
double brute_force_eval(const Genome& g, const std::array<double, 3>& inputs) {
    std::map<int, double> memo;
    std::function<double(int)> eval = [&](int id) -> double {
        auto it = memo.find(id);
        if (it != memo.end()) return it->second;
        const NodeGene* node = g.find_node(id);
        if (node->role == NodeRole::Input) {
            int seen = 0;
            for (const auto& n : g.nodes) {
                if (n.role != NodeRole::Input) continue;
                if (n.id == id) break;
                ++seen;
            }
            return memo[id] = inputs[seen];
        }
        double sum = node->bias;
        for (const auto& c : g.connections)
            if (c.enabled && c.to == id) sum += c.weight * eval(c.from);
        return memo[id] = std::tanh(sum);
    };
    for (const auto& n : g.nodes)
        if (n.role == NodeRole::Output) return eval(n.id);
    return 0.0;
}

}  // namespace

TEST_CASE("encode reproduces the worked before-mutation table") {
    Genome g = decode(table_before(), example_nodes());
    ChromosomeTable t = encode(g);
    CHECK(t.weight == table_before().weight);
    CHECK(t.from == table_before().from);
    CHECK(t.to == table_before().to);
    CHECK(t.enabled == table_before().enabled);
    CHECK(format_table(t) ==
          "Weight 0.25 2.31 1.55 0.98 5.11 1.17 0.07\n"
          "From 1 2 3 1 3 4 2\n"
          "To 2 3 2 3 4 3 4\n"
          "Enabled 1 0 1 1 1 1 1\n");
}

TEST_CASE("after-mutation table decodes with the expected disabled set") {
    Genome g = decode(table_after(), example_nodes());
    std::set<std::pair<int, int>> disabled;
    for (const auto& c : g.connections)
        if (!c.enabled) disabled.insert({c.from, c.to});
    CHECK(disabled == std::set<std::pair<int, int>>{{1, 4}, {4, 3}});
    CHECK(format_table(encode(g)) ==
          "Weight 0.25 5.11 1.17 0.98 2.31 1.55 0.07\n"
          "From 1 2 4 1 3 3 4\n"
          "To 3 4 2 4 2 4 3\n"
          "Enabled 1 1 1 0 1 1 0\n");
}

TEST_CASE("before and after tables carry different edge sets") {
    auto edges = [](const ChromosomeTable& t) {
        std::set<std::pair<int, int>> s;
        for (size_t i = 0; i < t.columns(); ++i) s.insert({t.from[i], t.to[i]});
        return s;
    };
    CHECK(edges(table_before()) != edges(table_after()));
}

TEST_CASE("empty genome encodes to a zero-column table") {
    Genome g;
    g.nodes = example_nodes();
    CHECK(encode(g).columns() == 0);
}

TEST_CASE("decode rejects bad tables") {
    auto nodes = example_nodes();
    ChromosomeTable bad_enabled = table_before();
    bad_enabled.enabled[0] = 2;
    CHECK_THROWS_WITH_AS(decode(bad_enabled, nodes), doctest::Contains("0 or 1"),
                         std::invalid_argument);

    ChromosomeTable bad_node = table_before();
    bad_node.from[0] = 9;
    CHECK_THROWS_WITH_AS(decode(bad_node, nodes), doctest::Contains("unknown node"),
                         std::invalid_argument);

    ChromosomeTable dup = table_before();
    dup.from[1] = 1;
    dup.to[1] = 2;
    CHECK_THROWS_WITH_AS(decode(dup, nodes), doctest::Contains("duplicate"),
                         std::invalid_argument);
}

TEST_CASE("encode/decode round-trips random genomes") {
    Rng rng(1001);
    InnovationTracker tracker;
    for (int trial = 0; trial < 1000; ++trial) {
        Genome g = random_genome(rng, tracker);
        Genome back = decode(encode(g), g.nodes);
        REQUIRE(back.connections.size() == g.connections.size());
        for (size_t i = 0; i < g.connections.size(); ++i) {
            CHECK(back.connections[i].weight == g.connections[i].weight);
            CHECK(back.connections[i].from == g.connections[i].from);
            CHECK(back.connections[i].to == g.connections[i].to);
            CHECK(back.connections[i].enabled == g.connections[i].enabled);
        }
    }
}

TEST_CASE("serialize/parse genome round trip") {
    Rng rng(77);
    InnovationTracker tracker;
    for (int trial = 0; trial < 100; ++trial) {
        Genome g = random_genome(rng, tracker);
        Genome back = parse_genome(serialize_genome(g));
        CHECK(serialize_genome(back) == serialize_genome(g));
        back.validate();
    }
    CHECK_THROWS_AS(parse_genome("Bogus 1 2 3\n"), std::invalid_argument);
}

TEST_CASE("activate: single path is tanh of the weighted input") {
    Genome g = minimal_genome(0.0, 0.0, 0.0);
    CHECK(activate(g, {1.0, 2.0, 3.0}) == 0.0);

    Genome g2 = minimal_genome(1.0, 0.0, 0.0);
    CHECK(activate(g2, {1.0, 0.0, 0.0}) ==
          doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    CHECK(activate(g2, {1.0, 0.0, 0.0}) == doctest::Approx(0.76159).epsilon(1e-4));

    Genome g3 = minimal_genome(0.7, 0.0, 0.0);
    CHECK(activate(g3, {0.5, 0.0, 0.0}) ==
          doctest::Approx(std::tanh(0.35)).epsilon(1e-12));
}

TEST_CASE("activate matches the brute-force recursive oracle") {
    Rng rng(2024);
    InnovationTracker tracker;
    for (int trial = 0; trial < 1000; ++trial) {
        Genome g = random_genome(rng, tracker, 3);
        std::array<double, 3> inputs = {rng.uniform(-1, 1), rng.uniform(-1, 1),
                                        rng.uniform(-1, 1)};
        double got = activate(g, inputs);
        double want = brute_force_eval(g, inputs);
        CHECK(std::abs(got - want) < 1e-12);
        CHECK(got > -1.0);
        CHECK(got < 1.0);
    }
}

TEST_CASE("activate rejects cycles among enabled connections") {
    Genome g = minimal_genome(1.0, 1.0, 1.0);
    g.nodes.push_back({5, NodeRole::Hidden, 0.0});
    g.nodes.push_back({6, NodeRole::Hidden, 0.0});
    g.connections.push_back({1.0, 5, 6, true, 10});
    g.connections.push_back({1.0, 6, 5, true, 11});
    CHECK_THROWS_AS(activate(g, {0, 0, 0}), std::runtime_error);
}

TEST_CASE("decide thresholds at zero") {
    Genome zero = minimal_genome(0.0, 0.0, 0.0);
    Observation obs{400.0, 100.0, 220.0};
    CHECK(decide(zero, obs, 1.0 / 800.0) == Action::NoFlap);

    Genome positive = minimal_genome(0.0, 0.0, 1.0);  // dist_to_bottom > 0
    CHECK(decide(positive, obs, 1.0 / 800.0) == Action::Flap);
}

TEST_CASE("decide is invariant under positive output-weight scaling") {
    Rng rng(31);
    InnovationTracker tracker;
    for (int trial = 0; trial < 500; ++trial) {
        Genome g = minimal_genome(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                  rng.uniform(-1, 1));
        Observation obs{rng.uniform(0, 800), rng.uniform(-320, 320),
                        rng.uniform(-320, 320)};
        Action base = decide(g, obs, 1.0 / 800.0);
        double k = rng.uniform(0.01, 50.0);
        Genome scaled = g;
        for (auto& c : scaled.connections) c.weight *= k;
        scaled.nodes.back().bias *= k;
        CHECK(decide(scaled, obs, 1.0 / 800.0) == base);
    }
}

TEST_CASE("mutate with all rates zero is the identity") {
    Rng rng(5);
    InnovationTracker tracker;
    Genome g = minimal_genome(0.3, -0.2, 0.9, 0.1);
    MutationParams off;
    off.weight_mutation_rate = 0.0;
    off.bias_mutation_rate = 0.0;
    off.add_connection_rate = 0.0;
    off.add_node_rate = 0.0;
    off.toggle_enable_rate = 0.0;
    Genome m = mutate(g, rng, off, tracker);
    CHECK(serialize_genome(m) == serialize_genome(g));
}

TEST_CASE("add-node split follows the canonical rule") {
    Rng rng(9);
    InnovationTracker tracker;
    MutationParams split_only;
    split_only.weight_mutation_rate = 0.0;
    split_only.bias_mutation_rate = 0.0;
    split_only.add_connection_rate = 0.0;
    split_only.toggle_enable_rate = 0.0;
    split_only.add_node_rate = 1.0;

    for (int trial = 0; trial < 100; ++trial) {
        Genome g = minimal_genome(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                  rng.uniform(-1, 1));
        Genome m = mutate(g, rng, split_only, tracker);
        REQUIRE(m.nodes.size() == 5);
        REQUIRE(m.connections.size() == 5);

        // Exactly one original connection got disabled; the two new genes
        // route through the new node with weights (1, old_weight).
        int new_id = m.nodes.back().id;
        const ConnectionGene* in = nullptr;
        const ConnectionGene* out = nullptr;
        const ConnectionGene* old = nullptr;
        for (const auto& c : m.connections) {
            if (c.to == new_id) in = &c;
            else if (c.from == new_id) out = &c;
            else if (!c.enabled) old = &c;
        }
        REQUIRE(in != nullptr);
        REQUIRE(out != nullptr);
        REQUIRE(old != nullptr);
        CHECK(in->weight == 1.0);
        CHECK(out->weight == old->weight);
        CHECK(in->from == old->from);
        CHECK(out->to == old->to);
        m.validate();

        // Function drift stays small on moderate inputs.
        for (int k = 0; k < 10; ++k) {
            std::array<double, 3> x = {rng.uniform(-0.5, 0.5),
                                       rng.uniform(-0.5, 0.5),
                                       rng.uniform(-0.5, 0.5)};
            CHECK(std::abs(activate(m, x) - activate(g, x)) < 0.2);
        }
    }
}

TEST_CASE("mutation chains preserve all genome invariants") {
    Rng rng(4242);
    InnovationTracker tracker;
    MutationParams params;  // defaults
    int checked = 0;
    for (int chain = 0; chain < 200; ++chain) {
        Genome g = minimal_genome(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                  rng.uniform(-1, 1));
        for (int step = 0; step < 50; ++step) {
            g = mutate(g, rng, params, tracker);
            g.validate();
            ++checked;
        }
        tracker.begin_generation();
    }
    CHECK(checked == 10000);
}

TEST_CASE("crossover of a genome with itself is structurally identical") {
    Rng rng(8);
    InnovationTracker tracker;
    Genome g = random_genome(rng, tracker);
    g.fitness = 3.0;
    Genome child = crossover(g, g, rng);
    CHECK(serialize_genome(child) == serialize_genome(g));
}

TEST_CASE("parents with identical innovation sets give that edge set") {
    Rng rng(12);
    InnovationTracker tracker;
    Genome a = minimal_genome(0.1, 0.2, 0.3);
    Genome b = minimal_genome(-0.5, 0.5, -0.9);
    a.fitness = 1.0;
    b.fitness = 2.0;
    Genome child = crossover(a, b, rng);
    REQUIRE(child.connections.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(child.connections[i].innovation == static_cast<std::int64_t>(i + 1));
        bool from_a = child.connections[i].weight == a.connections[i].weight;
        bool from_b = child.connections[i].weight == b.connections[i].weight;
        CHECK((from_a || from_b));
    }
}

TEST_CASE("disjoint genes come from the fitter parent") {
    Rng rng(13);
    InnovationTracker tracker;
    Genome weak = minimal_genome(0.1, 0.2, 0.3);
    weak.fitness = 1.0;
    Genome strong = minimal_genome(0.4, 0.5, 0.6);
    strong.nodes.push_back({5, NodeRole::Hidden, 0.0});
    strong.connections.push_back({0.9, 1, 5, true, 7});
    strong.connections.push_back({0.8, 5, 4, true, 8});
    strong.fitness = 2.0;
    Genome child = crossover(weak, strong, rng);
    CHECK(child.connections.size() == 5);
    CHECK(child.has_connection(1, 5));
    CHECK(child.has_connection(5, 4));
    child.validate();
}

TEST_CASE("random crossovers preserve all genome invariants") {
    Rng rng(515);
    InnovationTracker tracker;
    for (int trial = 0; trial < 10000; ++trial) {
        if (trial % 500 == 0) tracker.begin_generation();
        Genome a = random_genome(rng, tracker, 2);
        Genome b = random_genome(rng, tracker, 2);
        a.fitness = rng.uniform(0, 10);
        b.fitness = rng.uniform(0, 10);
        Genome child = crossover(a, b, rng);
        child.validate();
    }
}
