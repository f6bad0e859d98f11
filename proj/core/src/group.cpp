#include "isokit/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace isokit {

bool Perm::valid() const {
    std::vector<char> seen(img.size(), 0);
    for (int x : img) {
        if (x < 0 || x >= degree() || seen[static_cast<size_t>(x)]) return false;
        seen[static_cast<size_t>(x)] = 1;
    }
    return true;
}

Perm compose(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw contract_error("permutation degree mismatch");
    Perm r(a.degree());
    for (int x = 0; x < a.degree(); ++x) r.img[static_cast<size_t>(x)] = a(b(x));
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.degree());
    for (int x = 0; x < a.degree(); ++x) r.img[static_cast<size_t>(a(x))] = x;
    return r;
}

std::string to_cycle_string(const Perm& p) {
    std::ostringstream out;
    std::vector<char> seen(static_cast<size_t>(p.degree()), 0);
    bool any = false;
    for (int start = 0; start < p.degree(); ++start) {
        if (seen[static_cast<size_t>(start)] || p(start) == start) continue;
        any = true;
        out << "(";
        int x = start;
        bool first = true;
        do {
            seen[static_cast<size_t>(x)] = 1;
            if (!first) out << " ";
            out << x;
            first = false;
            x = p(x);
        } while (x != start);
        out << ")";
    }
    if (!any) return "()";
    return out.str();
}

Perm perm_from_cycle_string(const std::string& text, int degree) {
    Perm p(degree);
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '(') {
            ++i;
            continue;
        }
        size_t close = text.find(')', i);
        if (close == std::string::npos) throw contract_error("unbalanced cycle notation");
        std::istringstream cyc(text.substr(i + 1, close - i - 1));
        std::vector<int> points;
        int x;
        while (cyc >> x) {
            if (x < 0 || x >= degree) throw contract_error("cycle point out of range");
            points.push_back(x);
        }
        for (size_t k = 0; k < points.size(); ++k)
            p.img[static_cast<size_t>(points[k])] = points[(k + 1) % points.size()];
        i = close + 1;
    }
    if (!p.valid()) throw contract_error("cycles overlap");
    return p;
}

// Deterministic Schreier-Sims, fixpoint formulation: rebuild the chain from
// the current strong set, hunt for a Schreier generator that does not sift
// to the identity, add its residue, repeat. Each round strictly enlarges
// the chain product, so the loop terminates with a verified BSGS.
PermutationGroup PermutationGroup::from_generators(int degree, const std::vector<Perm>& generators) {
    PermutationGroup g(degree);
    for (const Perm& p : generators) {
        if (p.degree() != degree) throw contract_error("generator degree mismatch");
        if (!p.valid()) throw contract_error("generator is not a bijection");
        if (!p.is_identity()) g.generators_.push_back(p);
    }
    g.strong_ = g.generators_;
    g.rebuild();
    while (true) {
        std::optional<Perm> residue = g.find_violation();
        if (!residue) break;
        g.strong_.push_back(*residue);
        g.rebuild();
    }
    return g;
}

void PermutationGroup::rebuild() {
    // every strong generator must move some base point
    for (const Perm& s : strong_) {
        bool moves = false;
        for (int b : base_)
            if (s(b) != b) {
                moves = true;
                break;
            }
        if (!moves) {
            for (int x = 0; x < degree_; ++x)
                if (s(x) != x) {
                    base_.push_back(x);
                    break;
                }
        }
    }
    levels_.assign(base_.size(), Level{});
    for (size_t i = 0; i < base_.size(); ++i) {
        Level& lvl = levels_[i];
        lvl.point = base_[i];
        for (const Perm& s : strong_) {
            bool fixes_prefix = true;
            for (size_t j = 0; j < i && fixes_prefix; ++j) fixes_prefix = s(base_[j]) == base_[j];
            if (fixes_prefix) lvl.gens.push_back(s);
        }
        lvl.transversal.assign(static_cast<size_t>(degree_), -1);
        lvl.transversal[static_cast<size_t>(lvl.point)] = 0;
        lvl.words.push_back(Perm(degree_));
        std::vector<int> queue{lvl.point};
        for (size_t head = 0; head < queue.size(); ++head) {
            int x = queue[head];
            Perm word = lvl.words[static_cast<size_t>(lvl.transversal[static_cast<size_t>(x)])];
            for (const Perm& a : lvl.gens) {
                int y = a(x);
                if (lvl.transversal[static_cast<size_t>(y)] < 0) {
                    lvl.transversal[static_cast<size_t>(y)] = static_cast<int>(lvl.words.size());
                    lvl.words.push_back(compose(a, word));
                    queue.push_back(y);
                }
            }
        }
    }
}

std::optional<Perm> PermutationGroup::find_violation() const {
    for (size_t i = 0; i < levels_.size(); ++i) {
        const Level& lvl = levels_[i];
        for (int x = 0; x < degree_; ++x) {
            if (lvl.transversal[static_cast<size_t>(x)] < 0) continue;
            Perm word = lvl.words[static_cast<size_t>(lvl.transversal[static_cast<size_t>(x)])];
            for (const Perm& a : lvl.gens) {
                Perm schreier =
                    compose(inverse(transversal_element(i, a(x))), compose(a, word));
                Perm residue = partial_strip(schreier);
                if (!residue.is_identity()) return residue;
            }
        }
    }
    return std::nullopt;
}

// Sifts as far as possible and returns whatever is left. A non-identity
// result either moves the base point of the level it got stuck at (so the
// rebuilt orbit there grows) or fixes the whole base (so the base is
// extended); both strictly enlarge the chain.
Perm PermutationGroup::partial_strip(const Perm& p) const {
    Perm g = p;
    for (size_t i = 0; i < levels_.size(); ++i) {
        int image = g(levels_[i].point);
        if (levels_[i].transversal[static_cast<size_t>(image)] < 0) return g;
        g = compose(inverse(transversal_element(i, image)), g);
    }
    return g;
}

Perm PermutationGroup::transversal_element(size_t level, int point) const {
    int idx = levels_[level].transversal[static_cast<size_t>(point)];
    if (idx < 0) throw contract_error("point outside level orbit");
    return levels_[level].words[static_cast<size_t>(idx)];
}

std::optional<Perm> PermutationGroup::strip(const Perm& p) const {
    Perm g = p;
    for (size_t i = 0; i < levels_.size(); ++i) {
        int image = g(levels_[i].point);
        if (levels_[i].transversal[static_cast<size_t>(image)] < 0) return std::nullopt;
        g = compose(inverse(transversal_element(i, image)), g);
    }
    return g;
}

BigInt PermutationGroup::order() const {
    BigInt result = 1;
    for (const Level& lvl : levels_) {
        int orbit = 0;
        for (int x : lvl.transversal)
            if (x >= 0) ++orbit;
        result *= orbit;
    }
    return result;
}

bool PermutationGroup::contains(const Perm& p) const {
    if (p.degree() != degree_) return false;
    if (!p.valid()) return false;
    auto residue = strip(p);
    return residue && residue->is_identity();
}

std::vector<int> PermutationGroup::orbit(int point) const {
    if (point < 0 || point >= degree_) throw contract_error("orbit point out of range");
    const std::vector<Perm>& acting = strong_.empty() ? generators_ : strong_;
    std::vector<char> seen(static_cast<size_t>(degree_), 0);
    std::vector<int> queue{point};
    seen[static_cast<size_t>(point)] = 1;
    for (size_t head = 0; head < queue.size(); ++head)
        for (const Perm& g : acting) {
            int y = g(queue[head]);
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = 1;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<std::vector<int>> PermutationGroup::orbits() const {
    std::vector<char> seen(static_cast<size_t>(degree_), 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < degree_; ++x) {
        if (seen[static_cast<size_t>(x)]) continue;
        auto orb = orbit(x);
        for (int y : orb) seen[static_cast<size_t>(y)] = 1;
        out.push_back(std::move(orb));
    }
    return out;
}

std::optional<Perm> PermutationGroup::transporter(int from, int to) const {
    if (from == to) return Perm(degree_);
    const std::vector<Perm>& acting = strong_.empty() ? generators_ : strong_;
    std::vector<int> parent_gen(static_cast<size_t>(degree_), -1);
    std::vector<int> parent(static_cast<size_t>(degree_), -1);
    std::vector<int> queue{from};
    parent[static_cast<size_t>(from)] = from;
    for (size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (size_t gi = 0; gi < acting.size(); ++gi) {
            int y = acting[gi](x);
            if (parent[static_cast<size_t>(y)] >= 0) continue;
            parent[static_cast<size_t>(y)] = x;
            parent_gen[static_cast<size_t>(y)] = static_cast<int>(gi);
            queue.push_back(y);
        }
    }
    if (parent[static_cast<size_t>(to)] < 0) return std::nullopt;
    Perm word(degree_);
    int cur = to;
    while (cur != from) {
        word = compose(word, acting[static_cast<size_t>(parent_gen[static_cast<size_t>(cur)])]);
        cur = parent[static_cast<size_t>(cur)];
    }
    return word;
}

// Backtracking over the stabilizer chain. Prefix pruning: the image of any
// decided base point must stay on its side of S. Sibling pruning at the top
// level uses orbits of the subgroup found so far.
void PermutationGroup::stabilizer_descend(size_t level, const Perm& word,
                                          const std::vector<char>& in_s,
                                          PermutationGroup& found) const {
    if (level == levels_.size()) {
        for (int x = 0; x < degree_; ++x)
            if (in_s[static_cast<size_t>(x)] != in_s[static_cast<size_t>(word(x))]) return;
        if (!word.is_identity() && !found.contains(word)) {
            auto gens = found.generators();
            gens.push_back(word);
            found = PermutationGroup::from_generators(degree_, gens);
        }
        return;
    }
    std::vector<char> done(static_cast<size_t>(degree_), 0);
    for (int img = 0; img < degree_; ++img) {
        if (levels_[level].transversal[static_cast<size_t>(img)] < 0) continue;
        int target = word(img);
        if (in_s[static_cast<size_t>(levels_[level].point)] != in_s[static_cast<size_t>(target)]) continue;
        if (level == 0 && done[static_cast<size_t>(target)]) continue;
        Perm extended = compose(word, transversal_element(level, img));
        stabilizer_descend(level + 1, extended, in_s, found);
        if (level == 0)
            for (int y : found.orbit(target)) done[static_cast<size_t>(y)] = 1;
    }
}

PermutationGroup PermutationGroup::set_stabilizer(const std::vector<int>& s) const {
    std::vector<char> in_s(static_cast<size_t>(degree_), 0);
    for (int x : s) {
        if (x < 0 || x >= degree_) throw contract_error("set stabilizer point out of range");
        in_s[static_cast<size_t>(x)] = 1;
    }
    PermutationGroup found = PermutationGroup::from_generators(degree_, {});
    stabilizer_descend(0, Perm(degree_), in_s, found);
    return found;
}

PermutationGroup PermutationGroup::color_stabilizer(const std::vector<int>& point_color) const {
    if (static_cast<int>(point_color.size()) != degree_)
        throw contract_error("color stabilizer: color vector length mismatch");
    std::set<int> colors(point_color.begin(), point_color.end());
    PermutationGroup current = *this;
    for (int c : colors) {
        std::vector<int> s;
        for (int x = 0; x < degree_; ++x)
            if (point_color[static_cast<size_t>(x)] == c) s.push_back(x);
        if (s.empty() || static_cast<int>(s.size()) == degree_) continue;
        current = current.set_stabilizer(s);
    }
    return current;
}

std::vector<Perm> brute_force_closure(int degree, const std::vector<Perm>& generators, size_t limit) {
    std::set<Perm> closure;
    closure.insert(Perm(degree));
    std::vector<Perm> queue{Perm(degree)};
    for (size_t head = 0; head < queue.size(); ++head) {
        for (const Perm& g : generators) {
            Perm next = compose(g, queue[head]);
            if (closure.insert(next).second) {
                if (closure.size() > limit) throw contract_error("closure limit exceeded");
                queue.push_back(next);
            }
        }
    }
    return queue;
}

} // namespace isokit
