#include "neatbird/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace neatbird {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void SweepSpec::validate() const {
    if (population_sizes.empty())
        throw std::invalid_argument("SweepSpec.population_sizes: must be non-empty");
    for (int n : population_sizes)
        if (n < 2)
            throw std::invalid_argument(
                "SweepSpec.population_sizes: sizes must be at least 2");
    if (seeds.empty())
        throw std::invalid_argument("SweepSpec.seeds: must be non-empty");
    if (generations < 1)
        throw std::invalid_argument("SweepSpec.generations: must be at least 1");
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty list");
    std::sort(values.begin(), values.end());
    size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

int first_spike_generation(const std::vector<GenerationStats>& stats) {
    if (stats.empty()) return -1;
    double base = stats.front().average_score;
    for (const auto& s : stats)
        if (s.average_score > 0.0 && s.average_score >= 5.0 * base)
            return s.generation_index;
    return -1;
}

SweepCell summarize_run(const RunResult& run, int population_size,
                        std::uint64_t seed) {
    SweepCell cell;
    cell.population_size = population_size;
    cell.seed = seed;
    for (const auto& s : run.stats) {
        cell.average_score += s.average_score;
        cell.max_score = std::max(cell.max_score, s.max_score);
    }
    cell.average_score /= static_cast<double>(run.stats.size());
    cell.first_spike_generation = first_spike_generation(run.stats);
    return cell;
}

SweepReport run_sweep(const SweepSpec& spec, const SweepCellObserver& on_cell) {
    spec.validate();
    SweepReport report;
    for (int pop : spec.population_sizes) {
        std::vector<double> avgs, maxes, spikes;
        for (std::uint64_t seed : spec.seeds) {
            EvolutionConfig evo = spec.evo_template;
            evo.population_size = pop;
            evo.generations = spec.generations;
            evo.master_seed = seed;
            RunResult run = run_evolution(evo, spec.world_config);
            SweepCell cell = summarize_run(run, pop, seed);
            if (on_cell) on_cell(run, cell);
            report.cells.push_back(cell);
            avgs.push_back(cell.average_score);
            maxes.push_back(static_cast<double>(cell.max_score));
            spikes.push_back(static_cast<double>(cell.first_spike_generation));
        }
        SweepSummaryRow row;
        row.population_size = pop;
        row.median_average_score = median(avgs);
        row.median_max_score = median(maxes);
        row.median_first_spike_generation = median(spikes);
        report.summary.push_back(row);
    }
    return report;
}

void write_generation_csv(const RunResult& run, const std::string& path) {
    std::ostringstream out;
    out << "generation,max_score,average_score,average_fitness\n";
    for (const auto& s : run.stats)
        out << s.generation_index << ',' << s.max_score << ','
            << fixed6(s.average_score) << ',' << fixed6(s.average_fitness) << '\n';
    write_file(path, out.str());
}

void write_sweep_summary(const SweepReport& report, const std::string& path) {
    std::ostringstream out;
    out << "population,median_average_score,median_max_score,first_spike_generation\n";
    for (const auto& row : report.summary)
        out << row.population_size << ',' << fixed6(row.median_average_score) << ','
            << fixed6(row.median_max_score) << ','
            << fixed6(row.median_first_spike_generation) << '\n';
    write_file(path, out.str());
}

namespace {

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    CsvData data;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            data.header = cells;
            first = false;
        } else {
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(std::stod(c));
            data.rows.push_back(row);
        }
    }
    return data;
}

}  // namespace

void emit_line_chart(const std::string& csv_path,
                     const std::vector<std::string>& columns,
                     const std::string& path) {
    CsvData data = read_csv(csv_path);
    if (data.rows.empty())
        throw std::runtime_error("no data rows in " + csv_path);

    std::vector<size_t> col_idx;
    for (const auto& name : columns) {
        auto it = std::find(data.header.begin(), data.header.end(), name);
        if (it == data.header.end())
            throw std::runtime_error("column `" + name + "` not found in " + csv_path);
        col_idx.push_back(static_cast<size_t>(it - data.header.begin()));
    }

    const double width = 800, height = 500;
    const double ml = 60, mr = 20, mt = 30, mb = 50;
    double ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& row : data.rows) {
        for (size_t c : col_idx) {
            if (first) { ymin = ymax = row[c]; first = false; }
            ymin = std::min(ymin, row[c]);
            ymax = std::max(ymax, row[c]);
        }
    }
    if (ymax == ymin) ymax = ymin + 1.0;
    size_t n = data.rows.size();

    auto xpos = [&](size_t i) {
        return n == 1 ? ml : ml + (width - ml - mr) * static_cast<double>(i) /
                                 static_cast<double>(n - 1);
    };
    auto ypos = [&](double v) {
        return height - mb - (height - mt - mb) * (v - ymin) / (ymax - ymin);
    };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
        << width - mr << "\" y2=\"" << height - mb
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << data.header[0]
        << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << mt
        << "\" text-anchor=\"end\" font-size=\"12\">" << fixed6(ymax)
        << "</text>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << height - mb
        << "\" text-anchor=\"end\" font-size=\"12\">" << fixed6(ymin)
        << "</text>\n";
    for (size_t k = 0; k < col_idx.size(); ++k) {
        const char* color = palette[k % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < n; ++i) {
            if (i) out << ' ';
            out << fixed6(xpos(i)) << ',' << fixed6(ypos(data.rows[i][col_idx[k]]));
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 5 << "\" y=\"" << mt + 16 * (k + 1)
            << "\" text-anchor=\"end\" font-size=\"13\" fill=\"" << color << "\">"
            << columns[k] << "</text>\n";
    }
    out << "</svg>\n";
    write_file(path, out.str());
}

}  // namespace neatbird
