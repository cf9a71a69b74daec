#pragma once

// Command-line surface.  One subcommand per invocation:
//
//   enumerate  - counts and histograms of one family instance
//   table      - per-square / multiplicity / side-count tables as TSV
//   render     - SVG output under a coloring scheme
//   verify     - OEIS b-file regression for a registered binding
//   gp         - perturbed instance vs. closed forms and the counting line
//   sylvester  - four-point classification over a lattice grid
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordgrid/formulas.hpp"
#include "chordgrid/gp_lab.hpp"
#include "chordgrid/oeis.hpp"
#include "chordgrid/render.hpp"
#include "chordgrid/stats_cache.hpp"

namespace chordgrid {
namespace cli {

namespace detail {

using nlohmann::ordered_json;

inline FamilySpec spec_from_flags(const std::string& family, int m, int n, std::uint64_t seed,
                                  long scale_den) {
    FamilySpec spec;
    if (family == "bc") {
        spec = FamilySpec::bc(m, n);
    } else if (family == "ac") {
        spec = FamilySpec::ac(m, n);
    } else if (family == "lc") {
        spec = FamilySpec::lc(m, n);
    } else if (family == "it") {
        spec = FamilySpec::it(n);
    } else if (family == "bcgp") {
        spec = FamilySpec::bc_gp(m, n, seed);
        spec.perturbation.scale_denominator = scale_den;
    } else {
        throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    }
    return spec;
}

inline std::string histogram_line(const std::map<int, long long>& hist) {
    std::string out;
    for (const auto& [k, count] : hist) {
        if (!out.empty()) out += " ";
        out += std::to_string(k) + "=" + std::to_string(count);
    }
    return out;
}

inline ordered_json histogram_json(const std::map<int, long long>& hist) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, count] : hist) j[std::to_string(k)] = count;
    return j;
}

inline void print_enumerate(std::ostream& out, const FamilySpec& spec, const InstanceStats& st,
                            bool as_json, bool as_tsv) {
    if (as_json) {
        ordered_json j;
        j["schema"] = "chordgrid.census/1";
        j["family"] = family_name(spec.kind);
        if (spec.kind != Family::IsoscelesTriangle) j["m"] = spec.m;
        j["n"] = spec.n;
        if (spec.kind == Family::BoundaryChordsGP) j["seed"] = spec.perturbation.seed;
        j["nodes"] = st.counts.nodes;
        j["edges"] = st.counts.edges;
        j["cells"] = st.counts.cells;
        j["interior_nodes"] = st.interior_nodes;
        j["cell_side_histogram"] = histogram_json(st.cell_side_histogram);
        j["interior_multiplicity_histogram"] = histogram_json(st.multiplicity_histogram);
        j["boundary_cell_histogram"] = histogram_json(st.boundary_degree_histogram);
        if (st.per_square) {
            ordered_json rows = ordered_json::array();
            for (const PerSquareRow& r : *st.per_square)
                rows.push_back({{"triangles", r.triangles},
                                {"quadrilaterals", r.quadrilaterals},
                                {"cells", r.cells}});
            j["per_square"] = rows;
        }
        if (st.corner) {
            j["corner"] = {{"triangles", st.corner->triangles},
                           {"quadrilaterals", st.corner->quadrilaterals},
                           {"pentagons", st.corner->pentagons},
                           {"total", st.corner->total}};
        }
        out << j.dump(2) << "\n";
        return;
    }
    if (as_tsv) {
        out << "nodes\t" << st.counts.nodes << "\n";
        out << "edges\t" << st.counts.edges << "\n";
        out << "cells\t" << st.counts.cells << "\n";
        out << "interior_nodes\t" << st.interior_nodes << "\n";
        for (const auto& [k, c] : st.cell_side_histogram)
            out << "cell_sides." << k << "\t" << c << "\n";
        for (const auto& [k, c] : st.multiplicity_histogram)
            out << "interior_multiplicity." << k << "\t" << c << "\n";
        for (const auto& [k, c] : st.boundary_degree_histogram)
            out << "boundary_cells." << k << "\t" << c << "\n";
        return;
    }
    out << "nodes=" << st.counts.nodes << " edges=" << st.counts.edges
        << " cells=" << st.counts.cells << "\n";
    out << "interior_nodes=" << st.interior_nodes << "\n";
    out << "cell_sides: " << histogram_line(st.cell_side_histogram) << "\n";
    out << "interior_multiplicity: " << histogram_line(st.multiplicity_histogram) << "\n";
    out << "boundary_cells: " << histogram_line(st.boundary_degree_histogram) << "\n";
}

inline int run_table(std::ostream& out, const std::string& name, const std::string& family,
                     int m, int max_n) {
    if (family != "bc") throw CLI::ValidationError("--family", "tables are defined for bc only");
    if (max_n < 1) throw CLI::ValidationError("--max-n", "need at least one row");
    if (name == "t" || name == "q" || name == "c") {
        if (m != 1) throw CLI::ValidationError("--name", "per-square tables require --m 1");
        out << "n";
        for (int k = 1; k <= max_n; ++k) out << "\tk" << k;
        out << "\n";
        for (int n = 1; n <= max_n; ++n) {
            const InstanceStats& st = instance_stats(FamilySpec::bc(1, n));
            out << n;
            for (const PerSquareRow& row : *st.per_square) {
                const long long v = name == "t"   ? row.triangles
                                    : name == "q" ? row.quadrilaterals
                                                  : row.cells;
                out << "\t" << v;
            }
            for (int k = n; k < max_n; ++k) out << "\t";
            out << "\n";
        }
        return 0;
    }
    if (name == "v") {
        if (m != 1) throw CLI::ValidationError("--name", "the multiplicity table requires --m 1");
        out << "n";
        for (int c = 2; c <= max_n + 1; ++c) out << "\tc" << c;
        out << "\n";
        for (int n = 1; n <= max_n; ++n) {
            const InstanceStats& st = instance_stats(FamilySpec::bc(1, n));
            out << n;
            for (int c = 2; c <= n + 1; ++c)
                out << "\t" << histogram_value(st.multiplicity_histogram, c);
            for (int c = n + 1; c < max_n + 1; ++c) out << "\t";
            out << "\n";
        }
        return 0;
    }
    if (name == "sides") {
        if (m != 2) throw CLI::ValidationError("--name", "the side-count table requires --m 2");
        constexpr int kMaxSides = 8;
        out << "n";
        for (int k = 3; k <= kMaxSides; ++k) out << "\tk" << k;
        out << "\n";
        for (int n = 1; n <= max_n; ++n) {
            const InstanceStats& st = instance_stats(FamilySpec::bc(2, n));
            out << n;
            for (int k = 3; k <= kMaxSides; ++k)
                out << "\t" << histogram_value(st.cell_side_histogram, k);
            out << "\n";
        }
        return 0;
    }
    throw CLI::ValidationError("--name", "unknown table '" + name + "'");
}

inline int run_verify(std::ostream& out, const std::string& binding_name, long long max_n,
                      const oeis::FetchOptions& opt) {
    const oeis::SequenceBinding* binding = oeis::find_binding(binding_name);
    if (binding == nullptr)
        throw CLI::ValidationError("--binding", "no registered binding for " + binding_name);
    const long long upto = max_n > 0 ? std::min<long long>(max_n, binding->desk_scale_cap)
                                     : binding->desk_scale_cap;
    const oeis::VerifyReport rep = oeis::verify(*binding, upto, opt);
    out << rep.a_number << " (" << rep.statistic << "): compared " << rep.compared
        << " terms, " << rep.mismatches.size() << " mismatches";
    if (rep.truncated) out << " [b-file shorter than requested " << rep.requested << "]";
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f", rep.generator_seconds);
    out << " (" << timing << "s)\n";
    for (const auto& mm : rep.mismatches) {
        out << "  index " << mm.index << ": sequence " << to_string(mm.expected) << ", computed "
            << to_string(mm.actual) << "\n";
    }
    return rep.ok() ? 0 : 1;
}

inline int run_gp(std::ostream& out, int m, int n, std::uint64_t seed, long scale_den) {
    FamilySpec spec = FamilySpec::bc_gp(m, n, seed);
    spec.perturbation.scale_denominator = scale_den;
    const ChordSet cs = generate(spec);
    const Arrangement arr = build(cs);
    const BasicCounts counts = basic_counts(arr);
    const Integer expect_nodes = formulas::gp_nodes(m, n);
    const Integer expect_cells = formulas::gp_cells(m, n);
    const long long freeman = freeman_cell_count(arr, make_boundary_labeling(cs));

    out << spec.name() << " seed=" << seed << ": nodes=" << counts.nodes
        << " edges=" << counts.edges << " cells=" << counts.cells << "\n";
    out << "closed form: nodes=" << to_string(expect_nodes) << " cells=" << to_string(expect_cells)
        << "\n";
    out << "counting line: " << freeman << "\n";
    const bool ok = expect_nodes == to_integer(counts.nodes) &&
                    expect_cells == to_integer(counts.cells) && freeman == counts.cells;
    out << (ok ? "OK" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
}

inline int run_sylvester(std::ostream& out, const std::string& points, const std::string& mode,
                         long long samples, std::uint64_t seed, int threads,
                         long point_limit) {
    const std::size_t x = points.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--points", "expected WIDTHxHEIGHT, e.g. 9x9");
    const int pm = std::stoi(points.substr(0, x));
    const int pn = std::stoi(points.substr(x + 1));

    QuadrupleTally tally;
    if (mode == "exhaustive") {
        tally = classify_quadruples_exhaustive(pm, pn, threads,
                                               static_cast<std::size_t>(point_limit));
    } else if (mode == "mc") {
        tally = classify_quadruples_montecarlo(pm, pn, samples, seed);
    } else {
        throw CLI::ValidationError("--mode", "expected 'exhaustive' or 'mc'");
    }
    out << "grid " << pm << "x" << pn << " points, " << mode << ": total=" << tally.total
        << " convex=" << tally.convex << " triangle_with_interior=" << tally.triangle_with_interior
        << " degenerate=" << tally.degenerate << "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "convex fraction: %.7f (of nondegenerate), %.7f (of total)\n",
                  tally.convex_fraction(), tally.convex_fraction_of_total());
    out << buf;
    return 0;
}

}  // namespace detail

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact chord arrangements on reticulated rectangles"};
    app.require_subcommand(1);

    std::string family = "bc", table_name, scheme_name = "sides", out_file, binding, points = "9x9",
                mode = "exhaustive";
    int m = 1, n = 1, max_n = 10, width = 800, bins = 1000, threads = 0;
    long long samples = 1000000, max_index = 0;
    std::uint64_t seed = 1;
    long scale_den = 1000000, point_limit = 100;
    double stroke = 1.0;
    bool as_json = false, as_tsv = false, offline = false, restricted = false;
    oeis::FetchOptions fetch_opt;

    const auto add_family_flags = [&](CLI::App* cmd, bool with_seed) {
        cmd->add_option("--family", family, "bc|ac|lc|it|bcgp");
        cmd->add_option("--m", m, "vertical subdivisions");
        cmd->add_option("--n", n, "horizontal subdivisions");
        if (with_seed) {
            cmd->add_option("--seed", seed, "perturbation seed (bcgp)");
            cmd->add_option("--scale-den", scale_den, "perturbation denominator (bcgp)");
        }
    };

    CLI::App* enumerate = app.add_subcommand("enumerate", "counts and histograms of one instance");
    add_family_flags(enumerate, true);
    enumerate->add_flag("--json", as_json, "JSON output");
    enumerate->add_flag("--tsv", as_tsv, "TSV output");

    CLI::App* table = app.add_subcommand("table", "paper-style tables as TSV");
    table->add_option("--name", table_name, "t|q|c|v|sides")->required();
    table->add_option("--family", family, "bc (default)");
    table->add_option("--m", m, "1 for t/q/c/v, 2 for sides");
    table->add_option("--max-n", max_n, "number of rows");

    CLI::App* render = app.add_subcommand("render", "SVG of one instance");
    add_family_flags(render, true);
    render->add_option("--scheme", scheme_name, "sides|palette|radial");
    render->add_option("--out", out_file, "output file")->required();
    render->add_option("--width", width, "image width in px");
    render->add_option("--stroke", stroke, "stroke width in px");
    render->add_option("--bins", bins, "radial: number of distance bins");
    render->add_flag("--restricted", restricted, "radial: reds/greens/blues only");

    CLI::App* verify = app.add_subcommand("verify", "compare a statistic against its OEIS b-file");
    verify->add_option("--binding", binding, "A-number, e.g. A306302")->required();
    verify->add_option("--max-n", max_index, "largest index to compare (default: desk cap)");
    verify->add_flag("--offline", offline, "never touch the network");
    verify->add_option("--cache-dir", fetch_opt.cache_dir, "b-file cache directory");
    verify->add_option("--vendored-dir", fetch_opt.vendored_dir, "vendored snapshot directory");

    CLI::App* gp = app.add_subcommand("gp", "perturbed instance vs. closed forms");
    gp->add_option("--m", m, "vertical subdivisions")->required();
    gp->add_option("--n", n, "horizontal subdivisions")->required();
    gp->add_option("--seed", seed, "perturbation seed");
    gp->add_option("--scale-den", scale_den, "perturbation denominator");

    CLI::App* sylvester = app.add_subcommand("sylvester", "four-point classification on a grid");
    sylvester->add_option("--points", points, "grid dimensions in points, e.g. 9x9");
    sylvester->add_option("--mode", mode, "exhaustive|mc");
    sylvester->add_option("--samples", samples, "mc sample count");
    sylvester->add_option("--seed", seed, "mc seed");
    sylvester->add_option("--threads", threads, "exhaustive worker cap (0 = all cores)");
    sylvester->add_option("--point-limit", point_limit, "exhaustive grid size cap in points");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 pops from the back
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (enumerate->parsed()) {
            FamilySpec spec = detail::spec_from_flags(family, m, n, seed, scale_den);
            detail::print_enumerate(out, spec, instance_stats(spec), as_json, as_tsv);
            return 0;
        }
        if (table->parsed()) return detail::run_table(out, table_name, family, m, max_n);
        if (render->parsed()) {
            FamilySpec spec = detail::spec_from_flags(family, m, n, seed, scale_den);
            const Arrangement arr = build(generate(spec));
            ColorScheme scheme;
            if (scheme_name == "sides") {
                scheme = ColorScheme::by_sides(seed);
            } else if (scheme_name == "palette") {
                scheme = ColorScheme::palette();
            } else if (scheme_name == "radial") {
                scheme = ColorScheme::radial(seed, bins);
                scheme.restricted_palette = restricted;
            } else {
                throw CLI::ValidationError("--scheme", "unknown scheme '" + scheme_name + "'");
            }
            RenderOptions opt;
            opt.width_px = width;
            opt.stroke_width = stroke;
            const std::string svg = render_svg(arr, scheme, opt);
            std::ofstream file(out_file, std::ios::binary | std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open " + out_file);
            file << svg;
            out << "wrote " << out_file << " (" << arr.bounded_face_count() << " cells)\n";
            return 0;
        }
        if (verify->parsed()) {
            fetch_opt.offline = offline;
            return detail::run_verify(out, binding, max_index, fetch_opt);
        }
        if (gp->parsed()) return detail::run_gp(out, m, n, seed, scale_den);
        if (sylvester->parsed())
            return detail::run_sylvester(out, points, mode, samples, seed, threads, point_limit);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace cli
}  // namespace chordgrid
