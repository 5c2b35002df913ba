#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neatbird/rng.hpp"
#include "neatbird/world.hpp"

namespace neatbird {

enum class NodeRole { Input, Hidden, Output };

const char* to_string(NodeRole role);

struct NodeGene {
    int id = 0;
    NodeRole role = NodeRole::Hidden;
    double bias = 0.0;
};

struct ConnectionGene {
    double weight = 0.0;
    int from = 0;
    int to = 0;
    bool enabled = true;
    std::int64_t innovation = 0;
};

// Connection rows as printed in a chromosome table: one column per gene.
struct ChromosomeTable {
    std::vector<double> weight;
    std::vector<int> from;
    std::vector<int> to;
    std::vector<int> enabled;  // 0 or 1

    std::size_t columns() const { return weight.size(); }
};

struct Genome {
    std::vector<NodeGene> nodes;
    std::vector<ConnectionGene> connections;
    double fitness = 0.0;

    const NodeGene* find_node(int id) const;
    bool has_connection(int from, int to) const;

    // Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    // True iff adding an enabled from->to edge keeps the enabled graph acyclic.
    bool edge_keeps_acyclic(int from, int to) const;
};

struct MutationParams {
    double weight_mutation_rate = 0.03;  // per connection
    double weight_sigma = 0.5;
    double bias_mutation_rate = 0.03;  // per non-input node
    double bias_sigma = 0.5;
    double add_connection_rate = 0.05;
    double add_node_rate = 0.02;
    double toggle_enable_rate = 0.01;
};

// Assigns innovation numbers and hidden-node ids. Structural mutations
// hitting the same (from, to) pair within one generation share an id;
// call begin_generation() between generations.
class InnovationTracker {
public:
    // Defaults continue after the initial 3-in/1-out topology, which uses
    // node ids 1..4 and innovations 1..3.
    explicit InnovationTracker(std::int64_t next_innovation = 4, int next_node_id = 5)
        : next_innovation_(next_innovation), next_node_id_(next_node_id) {}

    std::int64_t connection_innovation(int from, int to);
    int node_id_for_split(std::int64_t split_innovation);
    void begin_generation();

    std::int64_t next_innovation() const { return next_innovation_; }

private:
    std::int64_t next_innovation_;
    int next_node_id_;
    std::map<std::pair<int, int>, std::int64_t> seen_connections_;
    std::map<std::int64_t, int> seen_splits_;
};

ChromosomeTable encode(const Genome& genome);

// Column order becomes connection-list order. Innovation numbers are
// assigned 1..N since the table does not carry them.
Genome decode(const ChromosomeTable& table, const std::vector<NodeGene>& nodes);

// Feed-forward evaluation over enabled connections in topological order;
// every non-input node computes tanh(bias + weighted inputs).
double activate(const Genome& genome, const std::array<double, 3>& inputs);

// Flap iff the scaled observation activates above 0.
Action decide(const Genome& genome, const Observation& obs, double input_scale);

Genome mutate(const Genome& genome, Rng& rng, const MutationParams& params,
              InnovationTracker& tracker);

Genome crossover(const Genome& parent_a, const Genome& parent_b, Rng& rng);

// Four labeled rows (Weight/From/To/Enabled), values space-separated with
// shortest round-trip formatting.
std::string format_table(const ChromosomeTable& table);

// format_table plus a node-list header and an Innov row; lossless.
std::string serialize_genome(const Genome& genome);
Genome parse_genome(const std::string& text);

}  // namespace neatbird
