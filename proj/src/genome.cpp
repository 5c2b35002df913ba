#include "neatbird/genome.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace neatbird {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    double v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number `" + s + "`");
    return v;
}

}  // namespace

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::Input: return "Input";
        case NodeRole::Hidden: return "Hidden";
        case NodeRole::Output: return "Output";
    }
    return "?";
}

const NodeGene* Genome::find_node(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

bool Genome::has_connection(int from, int to) const {
    for (const auto& c : connections)
        if (c.from == from && c.to == to) return true;
    return false;
}

bool Genome::edge_keeps_acyclic(int from, int to) const {
    if (from == to) return false;
    // Acyclic iff `from` is not reachable from `to` over enabled edges.
    std::vector<int> stack{to};
    std::vector<int> seen;
    while (!stack.empty()) {
        int node = stack.back();
        stack.pop_back();
        if (node == from) return false;
        if (std::find(seen.begin(), seen.end(), node) != seen.end()) continue;
        seen.push_back(node);
        for (const auto& c : connections)
            if (c.enabled && c.from == node) stack.push_back(c.to);
    }
    return true;
}

void Genome::validate() const {
    auto fail = [](const std::string& why) {
        throw std::invalid_argument("invalid genome: " + why);
    };
    int inputs = 0, outputs = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].id == nodes[j].id)
                fail("duplicate node id " + std::to_string(nodes[i].id));
        if (nodes[i].role == NodeRole::Input) ++inputs;
        if (nodes[i].role == NodeRole::Output) ++outputs;
    }
    if (inputs != 3) fail("expected 3 input nodes, found " + std::to_string(inputs));
    if (outputs != 1) fail("expected 1 output node, found " + std::to_string(outputs));
    for (size_t i = 0; i < connections.size(); ++i) {
        const auto& c = connections[i];
        const NodeGene* from = find_node(c.from);
        const NodeGene* to = find_node(c.to);
        if (!from) fail("connection from unknown node " + std::to_string(c.from));
        if (!to) fail("connection to unknown node " + std::to_string(c.to));
        if (c.from == c.to) fail("self-loop on node " + std::to_string(c.from));
        if (to->role == NodeRole::Input)
            fail("connection into input node " + std::to_string(c.to));
        if (from->role == NodeRole::Output)
            fail("connection out of output node " + std::to_string(c.from));
        for (size_t j = i + 1; j < connections.size(); ++j)
            if (connections[j].from == c.from && connections[j].to == c.to)
                fail("duplicate connection " + std::to_string(c.from) + "->" +
                     std::to_string(c.to));
    }
    // Cycle check over enabled edges: Kahn's algorithm must consume all nodes.
    std::unordered_map<int, int> indegree;
    for (const auto& n : nodes) indegree[n.id] = 0;
    for (const auto& c : connections)
        if (c.enabled) ++indegree[c.to];
    std::vector<int> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push_back(id);
    size_t processed = 0;
    while (!ready.empty()) {
        int node = ready.back();
        ready.pop_back();
        ++processed;
        for (const auto& c : connections)
            if (c.enabled && c.from == node && --indegree[c.to] == 0)
                ready.push_back(c.to);
    }
    if (processed != nodes.size()) fail("cycle among enabled connections");
}

std::int64_t InnovationTracker::connection_innovation(int from, int to) {
    auto key = std::make_pair(from, to);
    auto it = seen_connections_.find(key);
    if (it != seen_connections_.end()) return it->second;
    std::int64_t id = next_innovation_++;
    seen_connections_[key] = id;
    return id;
}

int InnovationTracker::node_id_for_split(std::int64_t split_innovation) {
    auto it = seen_splits_.find(split_innovation);
    if (it != seen_splits_.end()) return it->second;
    int id = next_node_id_++;
    seen_splits_[split_innovation] = id;
    return id;
}

void InnovationTracker::begin_generation() {
    seen_connections_.clear();
    seen_splits_.clear();
}

ChromosomeTable encode(const Genome& genome) {
    ChromosomeTable table;
    for (const auto& c : genome.connections) {
        table.weight.push_back(c.weight);
        table.from.push_back(c.from);
        table.to.push_back(c.to);
        table.enabled.push_back(c.enabled ? 1 : 0);
    }
    return table;
}

Genome decode(const ChromosomeTable& table, const std::vector<NodeGene>& nodes) {
    size_t n = table.columns();
    if (table.from.size() != n || table.to.size() != n || table.enabled.size() != n)
        throw std::invalid_argument("chromosome table rows have unequal lengths");
    Genome genome;
    genome.nodes = nodes;
    for (size_t i = 0; i < n; ++i) {
        if (table.enabled[i] != 0 && table.enabled[i] != 1)
            throw std::invalid_argument("enabled value must be 0 or 1, got " +
                                        std::to_string(table.enabled[i]));
        if (!genome.find_node(table.from[i]))
            throw std::invalid_argument("unknown node id " + std::to_string(table.from[i]));
        if (!genome.find_node(table.to[i]))
            throw std::invalid_argument("unknown node id " + std::to_string(table.to[i]));
        if (genome.has_connection(table.from[i], table.to[i]))
            throw std::invalid_argument("duplicate connection " +
                                        std::to_string(table.from[i]) + "->" +
                                        std::to_string(table.to[i]));
        genome.connections.push_back(ConnectionGene{
            table.weight[i], table.from[i], table.to[i], table.enabled[i] == 1,
            static_cast<std::int64_t>(i + 1)});
    }
    return genome;
}

double activate(const Genome& genome, const std::array<double, 3>& inputs) {
    size_t n = genome.nodes.size();
    // Genomes stay small; linear id lookup and thread-local scratch keep
    // the per-frame cost down.
    thread_local std::vector<double> value, accum;
    thread_local std::vector<int> indegree;
    thread_local std::vector<size_t> ready;
    value.assign(n, 0.0);
    accum.assign(n, 0.0);
    indegree.assign(n, 0);
    ready.clear();

    auto index_of = [&](int id) -> size_t {
        for (size_t i = 0; i < n; ++i)
            if (genome.nodes[i].id == id) return i;
        throw std::runtime_error("connection references unknown node " +
                                 std::to_string(id));
    };

    for (const auto& c : genome.connections)
        if (c.enabled) ++indegree[index_of(c.to)];

    size_t input_seen = 0;
    for (size_t i = 0; i < n; ++i) {
        if (genome.nodes[i].role == NodeRole::Input)
            value[i] = inputs[input_seen++];
        if (indegree[i] == 0) ready.push_back(i);
    }

    size_t processed = 0;
    double output = 0.0;
    while (!ready.empty()) {
        size_t i = ready.back();
        ready.pop_back();
        ++processed;
        const NodeGene& node = genome.nodes[i];
        if (node.role != NodeRole::Input)
            value[i] = std::tanh(node.bias + accum[i]);
        if (node.role == NodeRole::Output) output = value[i];
        for (const auto& c : genome.connections) {
            if (!c.enabled || c.from != node.id) continue;
            size_t j = index_of(c.to);
            accum[j] += c.weight * value[i];
            if (--indegree[j] == 0) ready.push_back(j);
        }
    }
    if (processed != n)
        throw std::runtime_error("cycle among enabled connections");
    return output;
}

Action decide(const Genome& genome, const Observation& obs, double input_scale) {
    double out = activate(genome, {obs.bird_y * input_scale,
                                   obs.dist_to_top * input_scale,
                                   obs.dist_to_bottom * input_scale});
    return out > 0.0 ? Action::Flap : Action::NoFlap;
}

Genome mutate(const Genome& genome, Rng& rng, const MutationParams& params,
              InnovationTracker& tracker) {
    Genome out = genome;

    for (auto& c : out.connections)
        if (rng.chance(params.weight_mutation_rate))
            c.weight += rng.gaussian(0.0, params.weight_sigma);
    for (auto& n : out.nodes)
        if (n.role != NodeRole::Input && rng.chance(params.bias_mutation_rate))
            n.bias += rng.gaussian(0.0, params.bias_sigma);

    if (!out.connections.empty() && rng.chance(params.toggle_enable_rate)) {
        auto& c = out.connections[rng.uniform_index(out.connections.size())];
        if (c.enabled) {
            c.enabled = false;
        } else if (out.edge_keeps_acyclic(c.from, c.to)) {
            c.enabled = true;
        }
    }

    if (rng.chance(params.add_node_rate)) {
        std::vector<size_t> enabled;
        for (size_t i = 0; i < out.connections.size(); ++i)
            if (out.connections[i].enabled) enabled.push_back(i);
        if (!enabled.empty()) {
            size_t pick = enabled[rng.uniform_index(enabled.size())];
            int new_id = tracker.node_id_for_split(out.connections[pick].innovation);
            if (!out.find_node(new_id)) {
                ConnectionGene split = out.connections[pick];  // copy: push_back invalidates refs
                out.connections[pick].enabled = false;
                out.nodes.push_back(NodeGene{new_id, NodeRole::Hidden, 0.0});
                // Canonical split: in-connection weight 1, out-connection
                // keeps the old weight.
                out.connections.push_back(ConnectionGene{
                    1.0, split.from, new_id, true,
                    tracker.connection_innovation(split.from, new_id)});
                out.connections.push_back(ConnectionGene{
                    split.weight, new_id, split.to, true,
                    tracker.connection_innovation(new_id, split.to)});
            }
        }
    }

    if (rng.chance(params.add_connection_rate)) {
        std::vector<std::pair<int, int>> candidates;
        for (const auto& from : out.nodes) {
            if (from.role == NodeRole::Output) continue;
            for (const auto& to : out.nodes) {
                if (to.role == NodeRole::Input || to.id == from.id) continue;
                if (out.has_connection(from.id, to.id)) continue;
                if (!out.edge_keeps_acyclic(from.id, to.id)) continue;
                candidates.emplace_back(from.id, to.id);
            }
        }
        if (!candidates.empty()) {
            auto [from, to] = candidates[rng.uniform_index(candidates.size())];
            out.connections.push_back(ConnectionGene{
                rng.uniform(-1.0, 1.0), from, to, true,
                tracker.connection_innovation(from, to)});
        }
    }

    out.fitness = 0.0;
    return out;
}

Genome crossover(const Genome& parent_a, const Genome& parent_b, Rng& rng) {
    const Genome& fitter = parent_b.fitness > parent_a.fitness ? parent_b : parent_a;
    const Genome& other = (&fitter == &parent_a) ? parent_b : parent_a;

    std::unordered_map<std::int64_t, const ConnectionGene*> other_genes;
    for (const auto& c : other.connections) other_genes[c.innovation] = &c;

    Genome child;
    child.nodes = fitter.nodes;
    // Gene list follows the fitter parent; disjoint and excess genes of the
    // less fit parent are dropped.
    for (const auto& c : fitter.connections) {
        auto it = other_genes.find(c.innovation);
        const ConnectionGene& chosen =
            (it != other_genes.end() && rng.chance(0.5)) ? *it->second : c;
        ConnectionGene gene = c;
        gene.weight = chosen.weight;
        gene.enabled = chosen.enabled;
        child.connections.push_back(gene);
    }
    // The mixed enabled flags can close a cycle; disable offending edges.
    for (auto& c : child.connections) {
        if (!c.enabled) continue;
        c.enabled = false;
        if (child.edge_keeps_acyclic(c.from, c.to)) c.enabled = true;
    }
    return child;
}

std::string format_table(const ChromosomeTable& table) {
    std::ostringstream out;
    out << "Weight";
    for (double w : table.weight) out << ' ' << fmt_double(w);
    out << "\nFrom";
    for (int f : table.from) out << ' ' << f;
    out << "\nTo";
    for (int t : table.to) out << ' ' << t;
    out << "\nEnabled";
    for (int e : table.enabled) out << ' ' << e;
    out << '\n';
    return out.str();
}

std::string serialize_genome(const Genome& genome) {
    std::ostringstream out;
    out << "Nodes";
    for (const auto& n : genome.nodes)
        out << ' ' << n.id << ':' << to_string(n.role) << ':' << fmt_double(n.bias);
    out << "\nInnov";
    for (const auto& c : genome.connections) out << ' ' << c.innovation;
    out << '\n' << format_table(encode(genome));
    return out.str();
}

Genome parse_genome(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Genome genome;
    std::vector<std::int64_t> innovations;
    ChromosomeTable table;
    auto split = [](const std::string& s) {
        std::istringstream ss(s);
        std::vector<std::string> parts;
        std::string word;
        while (ss >> word) parts.push_back(word);
        return parts;
    };
    bool saw_nodes = false;
    while (std::getline(in, line)) {
        auto parts = split(line);
        if (parts.empty()) continue;
        const std::string& tag = parts[0];
        if (tag == "Nodes") {
            saw_nodes = true;
            for (size_t i = 1; i < parts.size(); ++i) {
                auto c1 = parts[i].find(':');
                auto c2 = parts[i].find(':', c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw std::invalid_argument("malformed node entry `" + parts[i] + "`");
                NodeGene node;
                node.id = std::stoi(parts[i].substr(0, c1));
                std::string role = parts[i].substr(c1 + 1, c2 - c1 - 1);
                if (role == "Input") node.role = NodeRole::Input;
                else if (role == "Hidden") node.role = NodeRole::Hidden;
                else if (role == "Output") node.role = NodeRole::Output;
                else throw std::invalid_argument("unknown node role `" + role + "`");
                node.bias = parse_double(parts[i].substr(c2 + 1));
                genome.nodes.push_back(node);
            }
        } else if (tag == "Innov") {
            for (size_t i = 1; i < parts.size(); ++i)
                innovations.push_back(std::stoll(parts[i]));
        } else if (tag == "Weight") {
            for (size_t i = 1; i < parts.size(); ++i)
                table.weight.push_back(parse_double(parts[i]));
        } else if (tag == "From") {
            for (size_t i = 1; i < parts.size(); ++i)
                table.from.push_back(std::stoi(parts[i]));
        } else if (tag == "To") {
            for (size_t i = 1; i < parts.size(); ++i)
                table.to.push_back(std::stoi(parts[i]));
        } else if (tag == "Enabled") {
            for (size_t i = 1; i < parts.size(); ++i)
                table.enabled.push_back(std::stoi(parts[i]));
        } else {
            throw std::invalid_argument("unknown row tag `" + tag + "`");
        }
    }
    if (!saw_nodes) throw std::invalid_argument("missing Nodes header");
    Genome decoded = decode(table, genome.nodes);
    if (!innovations.empty()) {
        if (innovations.size() != decoded.connections.size())
            throw std::invalid_argument("Innov row length mismatch");
        for (size_t i = 0; i < innovations.size(); ++i)
            decoded.connections[i].innovation = innovations[i];
    }
    return decoded;
}

}  // namespace neatbird
