#include "isokit/encoding.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "isokit/canon.hpp"
#include "isokit/engines.hpp"

namespace isokit {

Encoding::Encoding(int labels) : k_(labels) {
    if (labels < 0) throw contract_error("negative label count");
    l_.assign(static_cast<size_t>(k_) * k_, 'N');
    ln_.assign(static_cast<size_t>(k_) * k_, ExceptionBudget::of(0));
}

void Encoding::set(int i, int j, char l, ExceptionBudget ln) {
    set_L(i, j, l);
    set_LN(i, j, ln);
}

void Encoding::set_L(int i, int j, char l) {
    if (l != 'A' && l != 'N') throw contract_error("label must be A or N");
    l_[static_cast<size_t>(i * k_ + j)] = l;
}

void Encoding::set_LN(int i, int j, ExceptionBudget ln) {
    ln_[static_cast<size_t>(i * k_ + j)] = ln;
}

bool Encoding::symmetric_L() const {
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j)
            if (L(i, j) != L(j, i)) return false;
    return true;
}

bool Encoding::all_finite() const {
    for (const auto& b : ln_)
        if (b.infinite) return false;
    return true;
}

long long Encoding::max_finite_LN() const {
    long long m = 0;
    for (const auto& b : ln_)
        if (!b.infinite) m = std::max(m, b.value);
    return m;
}

Encoding Encoding::restricted(const std::vector<int>& keep) const {
    Encoding out(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            out.set(static_cast<int>(i), static_cast<int>(j), L(keep[i], keep[j]), LN(keep[i], keep[j]));
    return out;
}

bool validate_encoding_map(const ColoredGraph& g, const Encoding& enc, const EncodingMap& phi) {
    if (static_cast<int>(phi.size()) != g.size()) return false;
    for (int lab : phi)
        if (lab < 0 || lab >= enc.labels()) return false;
    for (int v = 0; v < g.size(); ++v) {
        for (int j = 0; j < enc.labels(); ++j) {
            const ExceptionBudget& b = enc.LN(phi[static_cast<size_t>(v)], j);
            if (b.infinite) continue;
            bool want_adjacent = enc.L(phi[static_cast<size_t>(v)], j) == 'A';
            long long exceptions = 0;
            for (int u = 0; u < g.size(); ++u) {
                if (u == v || phi[static_cast<size_t>(u)] != j) continue;
                if (g.adjacent(u, v) != want_adjacent) ++exceptions;
            }
            if (exceptions > b.value) return false;
        }
    }
    return true;
}

namespace {

// Exception counters for the incremental search. exc[v][j] counts assigned
// wrong-adjacency vertices with label j against v's budget LN(phi(v), j).
struct SearchState {
    const ColoredGraph& g;
    const Encoding& enc;
    std::vector<int> phi;
    std::vector<std::vector<long long>> exc;
    std::vector<int> order;
    Budget* budget;
    std::uint64_t nodes = 0;
};

bool budget_ok(const SearchState& st, int v, int j) {
    const ExceptionBudget& b = st.enc.LN(st.phi[static_cast<size_t>(v)], j);
    return b.infinite || st.exc[static_cast<size_t>(v)][static_cast<size_t>(j)] <= b.value;
}

// Returns true to stop the search. on_solution may return false to keep
// enumerating past a full assignment.
bool assign_search(SearchState& st, size_t depth, const std::function<bool(const EncodingMap&)>& on_solution) {
    if (depth == st.order.size()) return on_solution(st.phi);
    int v = st.order[depth];
    for (int j = 0; j < st.enc.labels(); ++j) {
        ++st.nodes;
        if (st.budget) st.budget->tick("find_encoding_map");
        st.phi[static_cast<size_t>(v)] = j;
        bool feasible = true;
        std::vector<std::pair<int, int>> charged; // (vertex, label) increments
        for (size_t i = 0; i < depth && feasible; ++i) {
            int u = st.order[i];
            int ju = st.phi[static_cast<size_t>(u)];
            bool adj = st.g.adjacent(u, v);
            if ((st.enc.L(j, ju) == 'A') != adj) {
                ++st.exc[static_cast<size_t>(v)][static_cast<size_t>(ju)];
                charged.emplace_back(v, ju);
                feasible = budget_ok(st, v, ju);
            }
            if (feasible && (st.enc.L(ju, j) == 'A') != adj) {
                ++st.exc[static_cast<size_t>(u)][static_cast<size_t>(j)];
                charged.emplace_back(u, j);
                feasible = budget_ok(st, u, j);
            }
        }
        if (feasible && assign_search(st, depth + 1, on_solution)) return true;
        for (auto [u, lab] : charged) --st.exc[static_cast<size_t>(u)][static_cast<size_t>(lab)];
        st.phi[static_cast<size_t>(v)] = -1;
    }
    return false;
}

SearchState make_search_state(const ColoredGraph& g, const Encoding& enc, Budget* budget) {
    SearchState st{g, enc, std::vector<int>(static_cast<size_t>(g.size()), -1),
                   std::vector<std::vector<long long>>(
                       static_cast<size_t>(g.size()),
                       std::vector<long long>(static_cast<size_t>(enc.labels()), 0)),
                   {},
                   budget};
    st.order.resize(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) st.order[static_cast<size_t>(v)] = v;
    std::stable_sort(st.order.begin(), st.order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return st;
}

} // namespace

std::optional<EncodingMap> find_encoding_map(const ColoredGraph& g, const Encoding& enc,
                                             Budget* budget, std::uint64_t* search_nodes) {
    if (enc.labels() == 0) {
        if (g.size() == 0) return EncodingMap{};
        if (search_nodes) *search_nodes = 0;
        return std::nullopt;
    }
    SearchState st = make_search_state(g, enc, budget);
    EncodingMap found;
    bool ok = assign_search(st, 0, [&](const EncodingMap& phi) {
        found = phi;
        return true;
    });
    if (search_nodes) *search_nodes = st.nodes;
    if (!ok) return std::nullopt;
    if (!validate_encoding_map(g, enc, found))
        throw std::logic_error("encoding search produced an invalid map");
    return found;
}

// All valid maps of g, surjective ones only. The proof's polynomial
// witness-guessing is replaced by exhaustive enumeration at this scale; the
// search tree is still pruned by the running exception budgets.
static std::vector<EncodingMap> surjective_encodings(const ColoredGraph& g, const Encoding& enc,
                                                     Budget* budget) {
    if (g.size() < enc.labels() || enc.labels() == 0) return {};
    SearchState st = make_search_state(g, enc, budget);
    std::vector<EncodingMap> out;
    assign_search(st, 0, [&](const EncodingMap& phi) {
        std::vector<char> hit(static_cast<size_t>(enc.labels()), 0);
        for (int lab : phi) hit[static_cast<size_t>(lab)] = 1;
        if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) out.push_back(phi);
        return false;
    });
    return out;
}

bool class_excludes(const Encoding& enc, const ColoredGraph& h, Budget* budget) {
    return !find_encoding_map(h, enc, budget).has_value();
}

std::optional<PathWitness> is_simple_path_encoding(const Encoding& enc) {
    if (!enc.symmetric_L()) return std::nullopt;
    int k = enc.labels();
    // breadth-first over lengths so the witness is shortest, lexicographic
    // within a length so it is deterministic
    std::vector<std::vector<int>> frontier;
    for (int p = 0; p < k; ++p) frontier.push_back({p});
    for (int len = 2; len <= k; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& seq : frontier) {
            for (int q = 0; q < k; ++q) {
                if (std::find(seq.begin(), seq.end(), q) != seq.end()) continue;
                int p = seq.back();
                bool first_hop = seq.size() == 1;
                if (first_hop && !enc.LN(seq[0], q).infinite) continue;
                if (!first_hop && (!enc.LN(p, q).at_least(1) || !enc.LN(q, p).at_least(1))) continue;
                auto extended = seq;
                extended.push_back(q);
                if (enc.LN(q, p).at_least(2)) return PathWitness{extended};
                next.push_back(std::move(extended));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

bool class_c_check(const ColoredGraph& g) {
    int n = g.size();
    if (g.edge_count() < 5 * n) return false;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d < 4) return false;
        if (n - 1 - d < 4) return false;
    }
    return true;
}

ColoredGraph normalize_for_reduction(const ColoredGraph& g) {
    if (class_c_check(g)) return g;
    ColoredGraph h = disjoint_union(g, ColoredGraph(5));
    while (!class_c_check(h)) {
        if (h.size() + 6 > ColoredGraph::kMaxVertices)
            throw contract_error("normalization exceeded the vertex cap");
        h = join_universal(h, 6, 0);
    }
    return h;
}

ColoredGraph reduce_into_class(const ColoredGraph& g, const Encoding& enc, const PathWitness& w) {
    int t = static_cast<int>(w.labels.size());
    if (t < 2) throw contract_error("witness path needs at least two labels");
    for (int lab : w.labels)
        if (lab < 0 || lab >= enc.labels()) throw contract_error("witness label out of range");
    if (!enc.symmetric_L()) throw contract_error("witness requires a symmetric L");
    if (!enc.LN(w.labels[0], w.labels[1]).infinite ||
        !enc.LN(w.labels[static_cast<size_t>(t - 1)], w.labels[static_cast<size_t>(t - 2)]).at_least(2))
        throw contract_error("invalid simple-path witness");
    for (int i = 0; i + 1 < t; ++i)
        if (!enc.LN(w.labels[static_cast<size_t>(i)], w.labels[static_cast<size_t>(i + 1)]).at_least(1) ||
            !enc.LN(w.labels[static_cast<size_t>(i + 1)], w.labels[static_cast<size_t>(i)]).at_least(1))
            throw contract_error("invalid simple-path witness");

    int n = g.size();
    auto edge_list = g.edges();
    int m = static_cast<int>(edge_list.size());
    int middles_per_incidence = t - 2;
    int total = n + m + 2 * m * middles_per_incidence;
    if (total > ColoredGraph::kMaxVertices) throw contract_error("reduction output exceeds the vertex cap");

    // vertex layout: originals, edge vertices, then per-incidence paths
    auto edge_vertex = [&](int ei) { return n + ei; };
    auto middle_vertex = [&](int ei, int side, int kk) {
        return n + m + (ei * 2 + side) * middles_per_incidence + (kk - 2);
    };

    std::vector<int> phi(static_cast<size_t>(total), -1);
    for (int v = 0; v < n; ++v) phi[static_cast<size_t>(v)] = w.labels[0];
    for (int ei = 0; ei < m; ++ei) phi[static_cast<size_t>(edge_vertex(ei))] = w.labels[static_cast<size_t>(t - 1)];
    for (int ei = 0; ei < m; ++ei)
        for (int side = 0; side < 2; ++side)
            for (int kk = 2; kk <= t - 1; ++kk)
                phi[static_cast<size_t>(middle_vertex(ei, side, kk))] = w.labels[static_cast<size_t>(kk - 1)];

    // E1: all pairs whose labels say adjacent
    ColoredGraph out(total);
    for (int u = 0; u < total; ++u)
        for (int v = u + 1; v < total; ++v)
            if (enc.L(phi[static_cast<size_t>(u)], phi[static_cast<size_t>(v)]) == 'A') out.add_edge(u, v);

    auto toggle = [&](int u, int v) {
        if (out.adjacent(u, v)) out.remove_edge(u, v);
        else out.add_edge(u, v);
    };

    for (int ei = 0; ei < m; ++ei) {
        auto [a, b] = edge_list[static_cast<size_t>(ei)];
        int ends[2] = {a, b};
        if (t == 2) {
            toggle(a, edge_vertex(ei));
            toggle(b, edge_vertex(ei));
            continue;
        }
        for (int side = 0; side < 2; ++side) {
            for (int kk = 2; kk <= t - 2; ++kk) // E2: consecutive path vertices
                toggle(middle_vertex(ei, side, kk), middle_vertex(ei, side, kk + 1));
            toggle(ends[side], middle_vertex(ei, side, 2));               // E3
            toggle(edge_vertex(ei), middle_vertex(ei, side, t - 1));      // E4
        }
    }

    if (!validate_encoding_map(out, enc, phi))
        throw std::logic_error("reduction output rejects its constructed label map");
    return out;
}

namespace {

struct LnSolveResult {
    BoundedLnAnswer answer = BoundedLnAnswer::Undetermined;
    bool encodable1 = false;
    bool encodable2 = false;
};

LnSolveResult bounded_ln_solve(const ColoredGraph& g1, const ColoredGraph& g2, const Encoding& enc,
                               Budget* budget) {
    // twin-label merge: equal L rows and columns collapse at doubled budgets
    for (int j1 = 0; j1 < enc.labels(); ++j1)
        for (int j2 = j1 + 1; j2 < enc.labels(); ++j2) {
            bool twin = true;
            for (int j = 0; j < enc.labels() && twin; ++j)
                twin = enc.L(j1, j) == enc.L(j2, j) && enc.L(j, j1) == enc.L(j, j2);
            if (!twin) continue;
            std::vector<int> keep;
            for (int j = 0; j < enc.labels(); ++j)
                if (j != j2) keep.push_back(j);
            Encoding merged = enc.restricted(keep);
            auto preimages = [&](int label) {
                std::vector<int> pre{label};
                if (label == j1) pre.push_back(j2);
                return pre;
            };
            for (size_t a = 0; a < keep.size(); ++a)
                for (size_t b = 0; b < keep.size(); ++b) {
                    long long worst = 0;
                    for (int la : preimages(keep[a]))
                        for (int lb : preimages(keep[b]))
                            worst = std::max(worst, enc.LN(la, lb).value);
                    merged.set_LN(static_cast<int>(a), static_cast<int>(b), ExceptionBudget::of(2 * worst));
                }
            return bounded_ln_solve(g1, g2, merged, budget);
        }

    LnSolveResult result;
    auto maps1 = surjective_encodings(g1, enc, budget);
    auto maps2 = surjective_encodings(g2, enc, budget);
    result.encodable1 = !maps1.empty();
    result.encodable2 = !maps2.empty();

    long long c = enc.max_finite_LN();
    for (const auto& phi1 : maps1) {
        ColoredGraph h1 = g1;
        for (int v = 0; v < g1.size(); ++v) h1.set_color(v, phi1[static_cast<size_t>(v)]);
        h1.set_color_count(enc.labels());
        for (const auto& phi2 : maps2) {
            ColoredGraph h2 = g2;
            for (int v = 0; v < g2.size(); ++v) h2.set_color(v, phi2[static_cast<size_t>(v)]);
            h2.set_color_count(enc.labels());
            if (bounded_color_valence_iso(h1, h2, static_cast<int>(c), budget)) {
                result.answer = BoundedLnAnswer::Iso;
                return result;
            }
        }
    }

    // non-surjective maps live in proper sub-encodings
    if (enc.labels() > 1) {
        for (int drop = 0; drop < enc.labels(); ++drop) {
            std::vector<int> keep;
            for (int j = 0; j < enc.labels(); ++j)
                if (j != drop) keep.push_back(j);
            LnSolveResult sub = bounded_ln_solve(g1, g2, enc.restricted(keep), budget);
            result.encodable1 = result.encodable1 || sub.encodable1;
            result.encodable2 = result.encodable2 || sub.encodable2;
            if (sub.answer == BoundedLnAnswer::Iso) {
                result.answer = BoundedLnAnswer::Iso;
                return result;
            }
        }
    }

    if (result.encodable1 || result.encodable2) result.answer = BoundedLnAnswer::NonIso;
    return result;
}

} // namespace

BoundedLnAnswer bounded_ln_iso(const ColoredGraph& g1, const ColoredGraph& g2, const Encoding& enc,
                               Budget* budget) {
    if (!enc.all_finite()) throw contract_error("bounded_ln_iso requires all LN values finite");
    if (g1.size() == 0 && g2.size() == 0) return BoundedLnAnswer::Iso;
    if (g1.size() != g2.size()) {
        bool enc1 = find_encoding_map(g1, enc, budget).has_value();
        bool enc2 = find_encoding_map(g2, enc, budget).has_value();
        if (enc1 || enc2) return BoundedLnAnswer::NonIso;
        return BoundedLnAnswer::Undetermined;
    }
    return bounded_ln_solve(g1, g2, enc, budget).answer;
}

namespace {

Encoding chain3(char l12, char l23, char l13) {
    // three-label encodings sharing the budget profile inf,1 / 1,2
    Encoding e(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e.set(i, j, 'N', ExceptionBudget::of(0));
    e.set_L(0, 1, l12);
    e.set_L(1, 0, l12);
    e.set_L(1, 2, l23);
    e.set_L(2, 1, l23);
    e.set_L(0, 2, l13);
    e.set_L(2, 0, l13);
    e.set_LN(0, 1, ExceptionBudget::inf());
    e.set_LN(1, 0, ExceptionBudget::of(1));
    e.set_LN(1, 2, ExceptionBudget::of(1));
    e.set_LN(2, 1, ExceptionBudget::of(2));
    return e;
}

Encoding chain4(const std::vector<std::pair<int, int>>& adjacent_pairs) {
    Encoding e(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e.set(i, j, 'N', ExceptionBudget::of(0));
    for (auto [a, b] : adjacent_pairs) {
        e.set_L(a, b, 'A');
        e.set_L(b, a, 'A');
    }
    e.set_LN(0, 1, ExceptionBudget::inf());
    e.set_LN(1, 0, ExceptionBudget::of(1));
    e.set_LN(1, 2, ExceptionBudget::of(1));
    e.set_LN(2, 1, ExceptionBudget::of(1));
    e.set_LN(2, 3, ExceptionBudget::of(1));
    e.set_LN(3, 2, ExceptionBudget::of(2));
    return e;
}

} // namespace

// The A/N tables below are the ones the exclusion proofs actually use;
// exhaustive search confirms each table excludes exactly its target list
// (and the published figure captions pair two of them the other way
// around).
const std::vector<NamedEncoding>& builtin_encodings() {
    static const std::vector<NamedEncoding> fixtures = [] {
        std::vector<NamedEncoding> out;
        // A everywhere off the diagonal
        out.push_back({"x-2k2k1-k4", chain3('A', 'A', 'A')});
        // N everywhere except the p1-p3 arc
        out.push_back({"x-p6-p4p2-k4", chain3('N', 'N', 'A')});
        // A exactly on {p2,p3} and {p1,p3}
        out.push_back({"x-h1030-k4", chain3('N', 'A', 'A')});
        // four labels, A along the cycle p1-p2-p3-p4-p1: encoded graphs are
        // bipartite with sides {p1,p3} and {p2,p4}
        out.push_back({"x-bip-2p3k1", chain4({{0, 1}, {1, 2}, {2, 3}, {0, 3}})});
        // N exactly on {p1,p2}, {p3,p4} and the diagonal
        out.push_back({"x-h1020-k5", chain4({{0, 2}, {0, 3}, {1, 2}, {1, 3}})});
        return out;
    }();
    return fixtures;
}

const Encoding* builtin_encoding(const std::string& name) {
    for (const auto& ne : builtin_encodings())
        if (ne.name == name) return &ne.enc;
    return nullptr;
}

Encoding read_encoding(std::istream& in) {
    std::string line;
    int k = -1;
    Encoding enc;
    std::vector<char> seen;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag[0] == '#') continue;
        if (tag == "labels") {
            if (k >= 0) throw contract_error("duplicate labels header");
            if (!(ls >> k) || k < 0) throw contract_error("bad labels header");
            enc = Encoding(k);
            seen.assign(static_cast<size_t>(k) * k, 0);
        } else if (tag == "lab") {
            int i, j;
            std::string l, b;
            if (k < 0 || !(ls >> i >> j >> l >> b)) throw contract_error("bad lab line");
            if (i < 0 || j < 0 || i >= k || j >= k) throw contract_error("lab index out of range");
            if (l != "A" && l != "N") throw contract_error("lab value must be A or N");
            ExceptionBudget budget = b == "inf" ? ExceptionBudget::inf() : ExceptionBudget::of(std::stoll(b));
            enc.set(i, j, l[0], budget);
            seen[static_cast<size_t>(i * k + j)] = 1;
        } else {
            throw contract_error("unknown line tag '" + tag + "'");
        }
    }
    if (k < 0) throw contract_error("missing labels header");
    for (char s : seen)
        if (!s) throw contract_error("incomplete encoding: missing lab lines");
    return enc;
}

Encoding read_encoding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open encoding file: " + path);
    return read_encoding(in);
}

void write_encoding(std::ostream& out, const Encoding& enc) {
    out << "labels " << enc.labels() << "\n";
    for (int i = 0; i < enc.labels(); ++i)
        for (int j = 0; j < enc.labels(); ++j) {
            out << "lab " << i << " " << j << " " << enc.L(i, j) << " ";
            if (enc.LN(i, j).infinite) out << "inf";
            else out << enc.LN(i, j).value;
            out << "\n";
        }
}

} // namespace isokit
