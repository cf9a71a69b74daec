#pragma once

// OEIS b-file access and sequence regression.  Resolution order for a
// sequence is local cache, then the vendored snapshots shipped with the
// repository, then (unless offline) an HTTPS GET of
// https://oeis.org/A{num}/b{num}.txt, whose bytes are cached verbatim next
// to a retrieval-timestamp sidecar.  verify() compares a registered computed
// statistic term-by-term against the resolved sequence.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#ifndef CHORDGRID_NO_NETWORK
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#endif

#include "chordgrid/formulas.hpp"
#include "chordgrid/stats_cache.hpp"

namespace chordgrid {
namespace oeis {

enum class Source { Network, Cache, Vendored };

struct OeisSequence {
    std::string a_number;  // canonical "A" + 6 digits
    long long offset = 1;
    std::vector<Integer> terms;  // contiguous from offset
    Source source = Source::Vendored;

    const Integer& at(long long index) const {
        if (index < offset || index >= offset + static_cast<long long>(terms.size()))
            throw std::out_of_range(a_number + ": index " + std::to_string(index));
        return terms[static_cast<std::size_t>(index - offset)];
    }
    long long last_index() const { return offset + static_cast<long long>(terms.size()) - 1; }
};

struct FetchOptions {
    std::string cache_dir;     // empty: $CHORDGRID_OEIS_CACHE or ~/.cache/chordgrid/oeis
    std::string vendored_dir;  // empty: $CHORDGRID_OEIS_VENDORED or compiled-in default
    bool offline = false;
};

inline std::string canonical_a_number(const std::string& raw) {
    std::string digits = raw;
    if (!digits.empty() && (digits[0] == 'A' || digits[0] == 'a')) digits.erase(0, 1);
    if (digits.empty() || digits.size() > 6 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not an OEIS A-number: " + raw);
    return "A" + std::string(6 - digits.size(), '0') + digits;
}

inline std::string default_cache_dir() {
    if (const char* env = std::getenv("CHORDGRID_OEIS_CACHE")) return env;
    if (const char* home = std::getenv("HOME"))
        return std::string(home) + "/.cache/chordgrid/oeis";
    return ".chordgrid-oeis-cache";
}

inline std::string default_vendored_dir() {
    if (const char* env = std::getenv("CHORDGRID_OEIS_VENDORED")) return env;
#ifdef CHORDGRID_OEIS_VENDORED_DIR
    return CHORDGRID_OEIS_VENDORED_DIR;
#else
    return "data/oeis";
#endif
}

/// Parses b-file text: whitespace-separated "index value" lines, '#'
/// comments and blank lines skipped.  Indices must be contiguous.
inline OeisSequence parse_b_file(const std::string& a_number, const std::string& text,
                                 Source source) {
    OeisSequence seq;
    seq.a_number = a_number;
    seq.source = source;
    std::istringstream in(text);
    std::string line;
    long long line_no = 0;
    bool have_first = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        std::istringstream fields(line.substr(begin));
        long long index = 0;
        std::string value;
        if (!(fields >> index >> value))
            throw std::runtime_error(a_number + ": malformed b-file line " +
                                     std::to_string(line_no) + ": " + line);
        Integer term;
        if (mpz_set_str(term.get_mpz_t(), value.c_str(), 10) != 0)
            throw std::runtime_error(a_number + ": bad integer on b-file line " +
                                     std::to_string(line_no) + ": " + value);
        if (!have_first) {
            seq.offset = index;
            have_first = true;
        } else if (index != seq.offset + static_cast<long long>(seq.terms.size())) {
            throw std::runtime_error(a_number + ": non-contiguous index on line " +
                                     std::to_string(line_no));
        }
        seq.terms.push_back(std::move(term));
    }
    if (seq.terms.empty()) throw std::runtime_error(a_number + ": empty b-file");
    return seq;
}

namespace detail {

inline std::string b_file_name(const std::string& a_number) {
    return "b" + a_number.substr(1) + ".txt";
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write-temp-then-rename so concurrent fetchers never see partial files.
inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << bytes;
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<std::string> https_get_b_file(const std::string& a_number) {
#ifdef CHORDGRID_NO_NETWORK
    (void)a_number;
    return std::nullopt;
#else
    try {
        httplib::SSLClient client("oeis.org", 443);
        client.set_follow_location(true);
        client.set_connection_timeout(15, 0);
        client.set_read_timeout(30, 0);
        const auto res = client.Get("/" + a_number + "/" + b_file_name(a_number));
        if (!res || res->status != 200) return std::nullopt;
        return res->body;
    } catch (const std::exception&) {
        return std::nullopt;
    }
#endif
}

}  // namespace detail

/// Resolves a sequence: cache, then vendored snapshot, then network.
inline OeisSequence fetch(const std::string& raw_a_number, const FetchOptions& opt = {}) {
    const std::string a = canonical_a_number(raw_a_number);
    const std::string file = detail::b_file_name(a);
    const std::filesystem::path cache_dir =
        opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;
    const std::filesystem::path vendored_dir =
        opt.vendored_dir.empty() ? default_vendored_dir() : opt.vendored_dir;

    if (auto text = detail::read_file(cache_dir / file)) {
        return parse_b_file(a, *text, Source::Cache);
    }
    if (auto text = detail::read_file(vendored_dir / file)) {
        return parse_b_file(a, *text, Source::Vendored);
    }
    if (opt.offline) {
        throw std::runtime_error(a + ": not cached or vendored, and offline mode forbids network");
    }
    if (auto text = detail::https_get_b_file(a)) {
        OeisSequence seq = parse_b_file(a, *text, Source::Network);  // validate before caching
        detail::atomic_write(cache_dir / file, *text);
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        detail::atomic_write(cache_dir / (file + ".fetched"), std::to_string(now) + "\n");
        return seq;
    }
    throw std::runtime_error(a + ": network fetch failed and no local copy exists");
}

// ---------------------------------------------------------------------------
// Bindings between A-numbers and computed statistics.

struct SequenceBinding {
    std::string a_number;
    std::string statistic;     // human-readable generator name
    long long desk_scale_cap;  // largest index computable at desk scale
    // Returns terms for indices 1..max_index (offset 1 throughout).
    std::function<std::vector<Integer>(long long)> generate;
};

struct VerifyReport {
    std::string a_number;
    std::string statistic;
    long long requested = 0;
    long long compared = 0;
    bool truncated = false;  // b-file shorter than requested
    struct Mismatch {
        long long index;
        Integer expected;
        Integer actual;
    };
    std::vector<Mismatch> mismatches;
    double generator_seconds = 0.0;

    bool ok() const { return mismatches.empty(); }
};

/// Element-wise comparison of a computed statistic against the sequence.
inline VerifyReport verify(const SequenceBinding& binding, long long max_index,
                           const FetchOptions& opt = {}) {
    VerifyReport rep;
    rep.a_number = binding.a_number;
    rep.statistic = binding.statistic;
    rep.requested = max_index;
    const OeisSequence seq = fetch(binding.a_number, opt);
    long long upto = max_index;
    if (seq.last_index() < upto) {
        upto = seq.last_index();
        rep.truncated = true;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Integer> computed = binding.generate(upto);
    rep.generator_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (long long i = 1; i <= upto && i <= static_cast<long long>(computed.size()); ++i) {
        const Integer& expected = seq.at(i);
        const Integer& actual = computed[static_cast<std::size_t>(i - 1)];
        rep.compared += 1;
        if (expected != actual) rep.mismatches.push_back({i, expected, actual});
    }
    return rep;
}

namespace detail {

using RowFn = std::function<std::vector<Integer>(int)>;

// Concatenates rows row(1), row(2), ... until max_index terms are produced.
inline std::vector<Integer> by_rows(long long max_index, const RowFn& row) {
    std::vector<Integer> out;
    for (int n = 1; static_cast<long long>(out.size()) < max_index; ++n) {
        for (Integer& v : row(n)) {
            out.push_back(std::move(v));
            if (static_cast<long long>(out.size()) == max_index) break;
        }
    }
    return out;
}

// Square array read by antidiagonals: (1,1); (1,2),(2,1); (1,3),(2,2),(3,1); ...
inline std::vector<Integer> by_antidiagonals(long long max_index,
                                             const std::function<Integer(int, int)>& entry) {
    std::vector<Integer> out;
    for (int d = 1; static_cast<long long>(out.size()) < max_index; ++d) {
        for (int m = 1; m <= d; ++m) {
            out.push_back(entry(m, d + 1 - m));
            if (static_cast<long long>(out.size()) == max_index) break;
        }
    }
    return out;
}

inline std::vector<Integer> side_histogram_row(const std::map<int, long long>& hist) {
    // Counts for k = 3 .. max nonzero k, interior zeros included.
    int max_k = 2;
    for (const auto& [k, count] : hist) {
        if (count > 0) max_k = std::max(max_k, k);
    }
    std::vector<Integer> row;
    for (int k = 3; k <= max_k; ++k) {
        auto it = hist.find(k);
        row.push_back(to_integer(it == hist.end() ? 0 : it->second));
    }
    return row;
}

}  // namespace detail

/// All A-number bindings: every tabulated statistic this library computes,
/// with desk-scale caps for the arrangement-backed ones.
inline const std::vector<SequenceBinding>& binding_registry() {
    static const std::vector<SequenceBinding> registry = [] {
        using formulas::bc1_counts;
        std::vector<SequenceBinding> r;

        auto formula_seq = [](std::function<Integer(int)> f) {
            return [f = std::move(f)](long long upto) {
                std::vector<Integer> out;
                for (int n = 1; n <= upto; ++n) out.push_back(f(n));
                return out;
            };
        };
        r.push_back({"A331755", "nodes of bc(1,n)", 400,
                     formula_seq([](int n) { return bc1_counts(n).nodes; })});
        r.push_back({"A331757", "edges of bc(1,n)", 400,
                     formula_seq([](int n) { return bc1_counts(n).edges; })});
        r.push_back({"A306302", "cells of bc(1,n)", 400,
                     formula_seq([](int n) { return bc1_counts(n).cells; })});
        r.push_back({"A159065", "interior nodes of bc(1,n)", 400,
                     formula_seq([](int n) { return formulas::bc1_interior(n); })});

        auto per_square_rows = [](int field) {
            return [field](long long upto) {
                return detail::by_rows(upto, [field](int n) {
                    const InstanceStats& st = instance_stats(FamilySpec::bc(1, n));
                    std::vector<Integer> row;
                    for (const PerSquareRow& sq : *st.per_square) {
                        row.push_back(to_integer(field == 0   ? sq.triangles
                                                 : field == 1 ? sq.quadrilaterals
                                                              : sq.cells));
                    }
                    return row;
                });
            };
        };
        r.push_back({"A333286", "triangles per square of bc(1,n)", 55, per_square_rows(0)});
        r.push_back({"A333287", "quadrilaterals per square of bc(1,n)", 55, per_square_rows(1)});
        r.push_back({"A333288", "cells per square of bc(1,n)", 55, per_square_rows(2)});

        r.push_back({"A333275", "interior nodes of bc(1,n) by crossing count", 55,
                     [](long long upto) {
                         return detail::by_rows(upto, [](int n) {
                             const InstanceStats& st = instance_stats(FamilySpec::bc(1, n));
                             std::vector<Integer> row;
                             for (int c = 2; c <= n + 1; ++c)
                                 row.push_back(to_integer(
                                     histogram_value(st.multiplicity_histogram, c)));
                             return row;
                         });
                     }});
        r.push_back({"A334701", "simple interior nodes of bc(1,n)", 30, [](long long upto) {
                         std::vector<Integer> out;
                         for (int n = 1; n <= upto; ++n) {
                             const InstanceStats& st = instance_stats(FamilySpec::bc(1, n));
                             out.push_back(to_integer(
                                 histogram_value(st.multiplicity_histogram, 2)));
                         }
                         return out;
                     }});

        auto family_seq = [](Family kind, bool cells, int fixed_m) {
            return [kind, cells, fixed_m](long long upto) {
                std::vector<Integer> out;
                for (int n = 1; n <= upto; ++n) {
                    FamilySpec spec{kind, fixed_m, n, {}};
                    const InstanceStats& st = instance_stats(spec);
                    out.push_back(to_integer(cells ? st.counts.cells : st.counts.nodes));
                }
                return out;
            };
        };
        r.push_back({"A331763", "nodes of bc(2,n)", 20, family_seq(Family::BoundaryChords, false, 2)});
        r.push_back({"A331766", "cells of bc(2,n)", 20, family_seq(Family::BoundaryChords, true, 2)});

        auto grid_seq = [](Family kind, bool cells) {
            return [kind, cells](long long upto) {
                return detail::by_antidiagonals(upto, [kind, cells](int m, int n) {
                    FamilySpec spec{kind, m, n, {}};
                    const InstanceStats& st = instance_stats(spec);
                    return to_integer(cells ? st.counts.cells : st.counts.nodes);
                });
            };
        };
        r.push_back({"A331453", "nodes of bc(m,n) by antidiagonals", 28,
                     grid_seq(Family::BoundaryChords, false)});
        r.push_back({"A331452", "cells of bc(m,n) by antidiagonals", 28,
                     grid_seq(Family::BoundaryChords, true)});
        r.push_back({"A288180", "nodes of ac(m,n) by antidiagonals", 28,
                     grid_seq(Family::AllChords, false)});
        r.push_back({"A288187", "cells of ac(m,n) by antidiagonals", 28,
                     grid_seq(Family::AllChords, true)});
        r.push_back({"A333284", "nodes of lc(m,n) by antidiagonals", 28,
                     grid_seq(Family::LongChords, false)});
        r.push_back({"A333282", "cells of lc(m,n) by antidiagonals", 28,
                     grid_seq(Family::LongChords, true)});

        auto diag_seq = [](Family kind, bool cells) {
            return [kind, cells](long long upto) {
                std::vector<Integer> out;
                for (int n = 1; n <= upto; ++n) {
                    FamilySpec spec{kind, n, n, {}};
                    const InstanceStats& st = instance_stats(spec);
                    out.push_back(to_integer(cells ? st.counts.cells : st.counts.nodes));
                }
                return out;
            };
        };
        r.push_back({"A333285", "nodes of lc(n,n)", 5, diag_seq(Family::LongChords, false)});
        r.push_back({"A255011", "cells of bc(n,n)", 5, diag_seq(Family::BoundaryChords, true)});
        r.push_back({"A331449", "nodes of bc(n,n)", 7, diag_seq(Family::BoundaryChords, false)});

        r.push_back({"A335701", "cells of bc(2,n) by side count", 75, [](long long upto) {
                         return detail::by_rows(upto, [](int n) {
                             const InstanceStats& st = instance_stats(FamilySpec::bc(2, n));
                             return detail::side_histogram_row(st.cell_side_histogram);
                         });
                     }});

        auto it_seq = [](int field) {
            return [field](long long upto) {
                std::vector<Integer> out;
                for (int n = 1; n <= upto; ++n) {
                    const InstanceStats& st = instance_stats(FamilySpec::it(n));
                    out.push_back(to_integer(field == 0   ? st.counts.nodes
                                              : field == 1 ? st.counts.edges
                                                           : st.counts.cells));
                }
                return out;
            };
        };
        r.push_back({"A332632", "nodes of it(n)", 10, it_seq(0)});
        r.push_back({"A332360", "edges of it(n)", 10, it_seq(1)});
        r.push_back({"A332358", "cells of it(n)", 10, it_seq(2)});
        return r;
    }();
    return registry;
}

inline const SequenceBinding* find_binding(const std::string& raw_a_number) {
    const std::string a = canonical_a_number(raw_a_number);
    for (const SequenceBinding& b : binding_registry()) {
        if (b.a_number == a) return &b;
    }
    return nullptr;
}

}  // namespace oeis
}  // namespace chordgrid
