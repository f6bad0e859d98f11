#include "isokit/engines.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace isokit {

InvariantValue InvariantSession::query(const ColoredGraph& g) {
    for (size_t i = 0; i < representatives_.size(); ++i) {
        ++calls_;
        if (decider_(g, representatives_[i]))
            return InvariantValue{"session:" + std::to_string(i)};
    }
    representatives_.push_back(g);
    return InvariantValue{"session:" + std::to_string(representatives_.size() - 1)};
}

namespace {

std::vector<std::vector<int>> color_cells(const ColoredGraph& g) {
    std::vector<std::vector<int>> cells(static_cast<size_t>(g.color_count()));
    for (int v = 0; v < g.size(); ++v) cells[static_cast<size_t>(g.color(v))].push_back(v);
    return cells;
}

bool class_size_multisets_match(const ColoredGraph& g1, const ColoredGraph& g2) {
    auto c1 = color_cells(g1), c2 = color_cells(g2);
    size_t k = std::max(c1.size(), c2.size());
    c1.resize(k);
    c2.resize(k);
    for (size_t i = 0; i < k; ++i)
        if (c1[i].size() != c2[i].size()) return false;
    return true;
}

} // namespace

bool bounded_color_valence_iso(const ColoredGraph& g1, const ColoredGraph& g2, int c, Budget* budget) {
    if (g1.size() != g2.size()) return false;
    auto [h1, h2] = joint_refine(g1, g2);
    if (!class_size_multisets_match(h1, h2)) return false;
    if (color_valence(h1) > c || color_valence(h2) > c)
        throw contract_error("bounded_color_valence_iso: color valence exceeds " + std::to_string(c));

    // extend the isomorphism coset over class prefixes in canonical order;
    // the last prefix is the whole graph, earlier ones only prune
    int classes = h1.color_count();
    std::vector<int> prefix1, prefix2;
    for (int cls = 0; cls < classes; ++cls) {
        for (int v = 0; v < h1.size(); ++v)
            if (h1.color(v) == cls) prefix1.push_back(v);
        for (int v = 0; v < h2.size(); ++v)
            if (h2.color(v) == cls) prefix2.push_back(v);
        IsoCoset coset = iso_coset(induced_subgraph(h1, prefix1), induced_subgraph(h2, prefix2), budget);
        if (coset.empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// generalized color valence machinery

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Induced subgraph with unique tag colors placed on chosen vertices. The
// i-th tag vertex receives color base+i; base is shared via color_count so
// source/target graphs of one test agree.
ColoredGraph tagged_subgraph(const ColoredGraph& g, const std::vector<int>& vertices,
                             const std::vector<int>& tag_vertices) {
    ColoredGraph sub = induced_subgraph(g, vertices);
    int base = g.color_count();
    for (size_t i = 0; i < tag_vertices.size(); ++i) {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), tag_vertices[i]);
        if (it == vertices.end() || *it != tag_vertices[i])
            throw std::logic_error("tag vertex outside subgraph");
        sub.set_color(static_cast<int>(it - vertices.begin()), base + static_cast<int>(i));
    }
    sub.set_color_count(base + static_cast<int>(tag_vertices.size()));
    return sub;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> idx(static_cast<size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::sort(out.begin(), out.end());
    return out;
}

int perm_index(const std::vector<std::vector<int>>& perms, const std::vector<int>& p) {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    if (it == perms.end() || *it != p) throw std::logic_error("permutation not in table");
    return static_cast<int>(it - perms.begin());
}

// Pipeline state shared by the claim iteration of the automorphism
// computation for bounded generalized color valence.
class GcvAut {
public:
    GcvAut(const ColoredGraph& refined, int c, Budget* budget) : g_(refined), c_(c), budget_(budget) {}

    PermutationGroup run() {
        auto cells = color_cells(g_);
        for (const auto& cell : cells)
            if (!cell.empty() && static_cast<int>(cell.size()) <= 2 * c_)
                for (int v : cell) u_.push_back(v);
        std::sort(u_.begin(), u_.end());

        if (u_.empty() || static_cast<int>(u_.size()) == g_.size())
            return automorphism_group(g_, budget_);

        std::vector<int> rest;
        for (int v = 0; v < g_.size(); ++v)
            if (!std::binary_search(u_.begin(), u_.end(), v)) rest.push_back(v);
        ColoredGraph g_rest = induced_subgraph(g_, rest);
        ModuleFamily fam = degree_dependence_modules(g_rest, c_);
        for (const auto& m : fam.modules) {
            std::vector<int> global;
            for (int x : m) global.push_back(rest[static_cast<size_t>(x)]);
            modules_.push_back(std::move(global));
        }

        // iterate Aut_S over the color classes inside U
        PermutationGroup aut_s = PermutationGroup::from_generators(static_cast<int>(u_.size()), {});
        std::vector<int> s_members;
        for (const auto& cell : cells) {
            if (cell.empty() || static_cast<int>(cell.size()) > 2 * c_) continue;
            aut_s = extend(aut_s, s_members, cell);
            for (int v : cell) s_members.push_back(v);
            std::sort(s_members.begin(), s_members.end());
        }
        return assemble(aut_s);
    }

private:
    int upos(int vertex) const {
        return static_cast<int>(std::lower_bound(u_.begin(), u_.end(), vertex) - u_.begin());
    }

    ColoredGraph module_graph(size_t mi, const std::vector<int>& tags) const {
        return tagged_subgraph(g_, sorted_union(modules_[mi], u_), tags);
    }

    bool module_iso(size_t mi, size_t mj, const std::vector<int>& source_tags,
                    const std::vector<int>& target_tags) const {
        return ir_iso(module_graph(mi, source_tags), module_graph(mj, target_tags), budget_).has_value();
    }

    std::optional<Perm> module_iso_witness(size_t mi, size_t mj, const std::vector<int>& source_tags,
                                           const std::vector<int>& target_tags) const {
        return ir_iso(module_graph(mi, source_tags), module_graph(mj, target_tags), budget_);
    }

    // equivalence of modules with the given vertices fixed pointwise
    std::vector<int> equivalence_classes(const std::vector<int>& fixed) const {
        UnionFind uf(modules_.size());
        for (size_t i = 0; i < modules_.size(); ++i)
            for (size_t j = i + 1; j < modules_.size(); ++j) {
                if (uf.find(static_cast<int>(i)) == uf.find(static_cast<int>(j))) continue;
                if (modules_[i].size() != modules_[j].size()) continue;
                if (module_iso(i, j, fixed, fixed)) uf.unite(static_cast<int>(i), static_cast<int>(j));
            }
        std::vector<int> cls(modules_.size());
        for (size_t i = 0; i < modules_.size(); ++i) cls[i] = uf.find(static_cast<int>(i));
        return cls;
    }

    PermutationGroup extend(const PermutationGroup& aut_s, const std::vector<int>& s,
                            const std::vector<int>& c_class) {
        std::vector<int> sc = sorted_union(s, c_class);
        std::vector<int> old_cls = equivalence_classes(s);
        std::vector<int> new_cls = equivalence_classes(sc);

        std::vector<int> old_reps, new_reps;
        std::map<int, int> old_id, new_id;
        for (size_t i = 0; i < modules_.size(); ++i) {
            if (!old_id.count(old_cls[i])) {
                old_id[old_cls[i]] = static_cast<int>(old_reps.size());
                old_reps.push_back(static_cast<int>(i));
            }
            if (!new_id.count(new_cls[i])) {
                new_id[new_cls[i]] = static_cast<int>(new_reps.size());
                new_reps.push_back(static_cast<int>(i));
            }
        }
        int n_old = static_cast<int>(old_reps.size());
        int n_new = static_cast<int>(new_reps.size());
        std::vector<int> new_size(static_cast<size_t>(n_new), 0), old_of_new(static_cast<size_t>(n_new), -1);
        for (size_t i = 0; i < modules_.size(); ++i) {
            ++new_size[static_cast<size_t>(new_id[new_cls[i]])];
            old_of_new[static_cast<size_t>(new_id[new_cls[i]])] = old_id[old_cls[i]];
        }

        // label old classes by the multiset of their new subclass sizes and
        // compute Aut'_S as the label stabilizer in the class action
        std::vector<std::vector<int>> old_label(static_cast<size_t>(n_old));
        for (int ni = 0; ni < n_new; ++ni)
            old_label[static_cast<size_t>(old_of_new[static_cast<size_t>(ni)])].push_back(
                new_size[static_cast<size_t>(ni)]);
        for (auto& lab : old_label) std::sort(lab.begin(), lab.end());

        int nu = static_cast<int>(u_.size());
        PermutationGroup aut_s_labeled = aut_s;
        if (n_old > 0 && !aut_s.generators().empty()) {
            std::vector<Perm> extended;
            for (const Perm& psi : aut_s.generators())
                extended.push_back(extend_gen_by_class_action(psi, s, old_reps, old_cls, old_id, nu));
            PermutationGroup wide = PermutationGroup::from_generators(nu + n_old, extended);
            std::map<std::vector<int>, int> label_code;
            std::vector<int> point_color(static_cast<size_t>(nu + n_old), -1);
            for (int oi = 0; oi < n_old; ++oi) {
                auto [it, fresh] = label_code.emplace(old_label[static_cast<size_t>(oi)],
                                                      static_cast<int>(label_code.size()));
                point_color[static_cast<size_t>(nu + oi)] = it->second;
            }
            PermutationGroup stab = wide.color_stabilizer(point_color);
            std::vector<Perm> projected;
            for (const Perm& p : stab.generators()) {
                std::vector<int> img(static_cast<size_t>(nu));
                for (int x = 0; x < nu; ++x) img[static_cast<size_t>(x)] = p(x);
                projected.push_back(Perm(img));
            }
            aut_s_labeled = PermutationGroup::from_generators(nu, projected);
        }

        // congruence classes of pairs (perm of C, new class)
        int csize = static_cast<int>(c_class.size());
        auto perms = all_permutations(csize);
        int nperm = static_cast<int>(perms.size());

        auto compose_local = [&](const std::vector<int>& a, const std::vector<int>& b) {
            std::vector<int> r(a.size());
            for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
            return r;
        };
        auto tags_sc = [&](const std::vector<int>& c_perm_target) {
            // source order: s then c_class; target: s fixed, C permuted
            std::vector<int> tags = s;
            tags.insert(tags.end(), c_perm_target.begin(), c_perm_target.end());
            return tags;
        };
        std::vector<int> c_sorted = c_class;
        std::sort(c_sorted.begin(), c_sorted.end());
        auto c_target_of_perm = [&](const std::vector<int>& pi) {
            std::vector<int> target(static_cast<size_t>(csize));
            for (int p = 0; p < csize; ++p) target[static_cast<size_t>(p)] = c_sorted[static_cast<size_t>(pi[static_cast<size_t>(p)])];
            return target;
        };
        std::vector<int> source_tags = tags_sc(c_sorted);

        // Dc(i,j): local C-permutations realized by isomorphisms fixing S
        std::vector<std::vector<std::vector<std::vector<int>>>> dc(
            static_cast<size_t>(n_new),
            std::vector<std::vector<std::vector<int>>>(static_cast<size_t>(n_new)));
        for (int i = 0; i < n_new; ++i)
            for (int j = 0; j < n_new; ++j) {
                if (modules_[static_cast<size_t>(new_reps[static_cast<size_t>(i)])].size() !=
                    modules_[static_cast<size_t>(new_reps[static_cast<size_t>(j)])].size())
                    continue;
                for (int pi = 0; pi < nperm; ++pi) {
                    if (module_iso(static_cast<size_t>(new_reps[static_cast<size_t>(i)]),
                                   static_cast<size_t>(new_reps[static_cast<size_t>(j)]), source_tags,
                                   tags_sc(c_target_of_perm(perms[static_cast<size_t>(pi)]))))
                        dc[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(perms[static_cast<size_t>(pi)]);
                }
            }

        auto point_of = [&](int pi, int ni) { return pi * n_new + ni; };
        UnionFind cong(static_cast<size_t>(nperm * n_new));
        for (int i = 0; i < n_new; ++i)
            for (int j = 0; j < n_new; ++j)
                for (const auto& delta : dc[static_cast<size_t>(i)][static_cast<size_t>(j)])
                    if (new_size[static_cast<size_t>(i)] == new_size[static_cast<size_t>(j)])
                        for (int p = 0; p < nperm; ++p) {
                            // phi = phi' o delta is congruent at (i) to phi' at (j)
                            auto phi = compose_local(perms[static_cast<size_t>(p)], delta);
                            cong.unite(point_of(perm_index(perms, phi), i), point_of(p, j));
                        }
        std::map<int, int> cong_id;
        std::vector<int> cong_of(static_cast<size_t>(nperm * n_new));
        for (int p = 0; p < nperm; ++p)
            for (int ni = 0; ni < n_new; ++ni) {
                int root = cong.find(point_of(p, ni));
                auto [it, fresh] = cong_id.emplace(root, static_cast<int>(cong_id.size()));
                cong_of[static_cast<size_t>(point_of(p, ni))] = it->second;
            }
        int n_cong = static_cast<int>(cong_id.size());

        // generators of Sym(C) x Aut'_S acting on U-points plus congruence
        // classes of pairs
        int domain = nu + n_cong;
        std::vector<Perm> gens;
        std::vector<int> id_perm(static_cast<size_t>(csize));
        std::iota(id_perm.begin(), id_perm.end(), 0);

        auto act_on_pairs = [&](const std::function<std::pair<std::vector<int>, int>(
                                    const std::vector<int>&, int)>& pair_image,
                                std::vector<int>& img) {
            std::vector<int> cong_img(static_cast<size_t>(n_cong), -1);
            for (int p = 0; p < nperm; ++p)
                for (int ni = 0; ni < n_new; ++ni) {
                    auto [phi2, nj] = pair_image(perms[static_cast<size_t>(p)], ni);
                    int from = cong_of[static_cast<size_t>(point_of(p, ni))];
                    int to = cong_of[static_cast<size_t>(point_of(perm_index(perms, phi2), nj))];
                    if (cong_img[static_cast<size_t>(from)] == -1) cong_img[static_cast<size_t>(from)] = to;
                    else if (cong_img[static_cast<size_t>(from)] != to)
                        throw std::logic_error("pair action is not well defined on congruence classes");
                }
            for (int q = 0; q < n_cong; ++q) img[static_cast<size_t>(nu + q)] = nu + cong_img[static_cast<size_t>(q)];
        };

        // Sym(C) factor
        std::vector<std::vector<int>> sym_gens;
        if (csize >= 2) {
            std::vector<int> swap01 = id_perm;
            std::swap(swap01[0], swap01[1]);
            sym_gens.push_back(swap01);
            std::vector<int> cyc(static_cast<size_t>(csize));
            for (int p = 0; p < csize; ++p) cyc[static_cast<size_t>(p)] = (p + 1) % csize;
            sym_gens.push_back(cyc);
        }
        for (const auto& sigma : sym_gens) {
            std::vector<int> img(static_cast<size_t>(domain));
            std::iota(img.begin(), img.end(), 0);
            for (int p = 0; p < csize; ++p)
                img[static_cast<size_t>(upos(c_sorted[static_cast<size_t>(p)]))] =
                    upos(c_sorted[static_cast<size_t>(sigma[static_cast<size_t>(p)])]);
            act_on_pairs(
                [&](const std::vector<int>& phi, int ni) {
                    return std::make_pair(compose_local(sigma, phi), ni);
                },
                img);
            gens.push_back(Perm(img));
        }
        // Aut'_S factor: each generator needs one realized (target class, f)
        for (const Perm& psi : aut_s_labeled.generators()) {
            std::vector<int> psi_tags;
            for (int x : s) psi_tags.push_back(u_[static_cast<size_t>(psi(upos(x)))]);
            std::vector<int> f_of(static_cast<size_t>(n_new), -1), j_of(static_cast<size_t>(n_new), -1);
            for (int ni = 0; ni < n_new; ++ni) {
                for (int nj = 0; nj < n_new && j_of[static_cast<size_t>(ni)] < 0; ++nj) {
                    if (new_size[static_cast<size_t>(ni)] != new_size[static_cast<size_t>(nj)]) continue;
                    for (int pf = 0; pf < nperm && j_of[static_cast<size_t>(ni)] < 0; ++pf) {
                        // isomorphism equal to psi on S and f^-1 on C
                        std::vector<int> finv = perms[static_cast<size_t>(pf)];
                        std::vector<int> target = psi_tags;
                        auto ct = c_target_of_perm(finv);
                        target.insert(target.end(), ct.begin(), ct.end());
                        if (module_iso(static_cast<size_t>(new_reps[static_cast<size_t>(ni)]),
                                       static_cast<size_t>(new_reps[static_cast<size_t>(nj)]), source_tags,
                                       target)) {
                            // f = inverse of the realized C-restriction
                            std::vector<int> f(static_cast<size_t>(csize));
                            for (int p = 0; p < csize; ++p) f[static_cast<size_t>(finv[static_cast<size_t>(p)])] = p;
                            f_of[static_cast<size_t>(ni)] = perm_index(perms, f);
                            j_of[static_cast<size_t>(ni)] = nj;
                        }
                    }
                }
                if (j_of[static_cast<size_t>(ni)] < 0)
                    throw std::logic_error("label-stabilized generator has no class action");
            }
            std::vector<int> img(static_cast<size_t>(domain));
            std::iota(img.begin(), img.end(), 0);
            for (int x = 0; x < nu; ++x) img[static_cast<size_t>(x)] = psi(x);
            act_on_pairs(
                [&](const std::vector<int>& phi, int ni) {
                    return std::make_pair(
                        compose_local(phi, perms[static_cast<size_t>(f_of[static_cast<size_t>(ni)])]),
                        j_of[static_cast<size_t>(ni)]);
                },
                img);
            gens.push_back(Perm(img));
        }

        PermutationGroup product = PermutationGroup::from_generators(domain, gens);
        std::vector<int> target_points;
        for (int ni = 0; ni < n_new; ++ni)
            target_points.push_back(nu + cong_of[static_cast<size_t>(point_of(perm_index(perms, id_perm), ni))]);
        std::sort(target_points.begin(), target_points.end());
        target_points.erase(std::unique(target_points.begin(), target_points.end()), target_points.end());
        PermutationGroup stab = product.set_stabilizer(target_points);

        std::vector<Perm> out;
        for (const Perm& p : stab.generators()) {
            std::vector<int> img(static_cast<size_t>(nu));
            for (int x = 0; x < nu; ++x) img[static_cast<size_t>(x)] = p(x);
            out.push_back(Perm(img));
        }
        return PermutationGroup::from_generators(nu, out);
    }

    Perm extend_gen_by_class_action(const Perm& psi, const std::vector<int>& s,
                                    const std::vector<int>& old_reps, const std::vector<int>& old_cls,
                                    std::map<int, int>& old_id, int nu) {
        std::vector<int> psi_tags;
        for (int x : s) psi_tags.push_back(u_[static_cast<size_t>(psi(upos(x)))]);
        int n_old = static_cast<int>(old_reps.size());
        std::vector<int> img(static_cast<size_t>(nu + n_old));
        for (int x = 0; x < nu; ++x) img[static_cast<size_t>(x)] = psi(x);
        for (int oi = 0; oi < n_old; ++oi) {
            int target = -1;
            for (int oj = 0; oj < n_old && target < 0; ++oj)
                if (module_iso(static_cast<size_t>(old_reps[static_cast<size_t>(oi)]),
                               static_cast<size_t>(old_reps[static_cast<size_t>(oj)]), s, psi_tags))
                    target = oj;
            if (target < 0) throw std::logic_error("Aut_S generator has no class action");
            img[static_cast<size_t>(nu + oi)] = nu + target;
        }
        (void)old_cls;
        (void)old_id;
        return Perm(img);
    }

    // Lift every Aut_U generator to an automorphism of the whole graph and
    // attach the kernel (automorphisms fixing U pointwise).
    PermutationGroup assemble(const PermutationGroup& aut_u) {
        std::vector<Perm> gens;
        for (const Perm& psi : aut_u.generators()) {
            std::vector<int> psi_tags;
            for (int x : u_) psi_tags.push_back(u_[static_cast<size_t>(psi(upos(x)))]);
            std::vector<int> alpha(static_cast<size_t>(g_.size()), -1);
            for (int x : u_) alpha[static_cast<size_t>(x)] = u_[static_cast<size_t>(psi(upos(x)))];
            std::vector<char> used(modules_.size(), 0);
            for (size_t mi = 0; mi < modules_.size(); ++mi) {
                bool placed = false;
                for (size_t mj = 0; mj < modules_.size() && !placed; ++mj) {
                    if (used[mj] || modules_[mi].size() != modules_[mj].size()) continue;
                    auto witness = module_iso_witness(mi, mj, u_, psi_tags);
                    if (!witness) continue;
                    // translate the local witness to global vertex images
                    std::vector<int> vi = sorted_union(modules_[mi], u_);
                    std::vector<int> vj = sorted_union(modules_[mj], u_);
                    for (int x : modules_[mi]) {
                        int local = static_cast<int>(std::lower_bound(vi.begin(), vi.end(), x) - vi.begin());
                        alpha[static_cast<size_t>(x)] = vj[static_cast<size_t>((*witness)(local))];
                    }
                    used[mj] = 1;
                    placed = true;
                }
                if (!placed) throw std::logic_error("Aut_U generator does not lift to the modules");
            }
            Perm lift{alpha};
            if (!is_isomorphism(g_, g_, lift))
                throw std::logic_error("module-wise lift is not an automorphism");
            gens.push_back(lift);
        }
        PermutationGroup kernel = automorphism_group(individualize_tuple(g_, u_), budget_);
        for (const Perm& p : kernel.generators()) gens.push_back(p);
        return PermutationGroup::from_generators(g_.size(), gens);
    }

    const ColoredGraph& g_;
    int c_;
    Budget* budget_;
    std::vector<int> u_;
    std::vector<std::vector<int>> modules_;
};

} // namespace

PermutationGroup gen_color_valence_aut(const ColoredGraph& g, int c, Budget* budget) {
    ColoredGraph refined = naive_refine(g).recolored(g);
    if (!is_gen_valence_at_most(refined, c))
        throw contract_error("gen_color_valence_aut: generalized color valence exceeds " +
                             std::to_string(c));
    GcvAut pipeline(refined, c, budget);
    return pipeline.run();
}

bool gen_color_valence_iso(const ColoredGraph& g1, const ColoredGraph& g2, int c, Budget* budget) {
    if (g1.size() != g2.size()) return false;
    if (g1.size() == 0) return true;
    for (const ColoredGraph* g : {&g1, &g2})
        if (!is_gen_valence_at_most(naive_refine(*g).recolored(*g), c))
            throw contract_error("gen_color_valence_iso: input generalized color valence exceeds " +
                                 std::to_string(c));

    int shared = std::max(g1.color_count(), g2.color_count());
    ColoredGraph a1 = g1, a2 = g2;
    a1.set_color_count(shared);
    a2.set_color_count(shared);
    a1 = join_universal(a1, 1, shared);
    a2 = join_universal(a2, 1, shared);
    int apex1_local = a1.size() - 1, apex2_local = a2.size() - 1;

    auto [r1, r2] = joint_refine(a1, a2);
    auto cells1 = color_cells(r1), cells2 = color_cells(r2);
    if (cells1.size() != cells2.size()) return false;
    for (size_t i = 0; i < cells1.size(); ++i)
        if (cells1[i].size() != cells2[i].size()) return false;

    ColoredGraph combined = disjoint_union(r1, r2);
    int offset = r1.size();
    // complement-style cross edges between dense class pairs
    for (size_t ci = 0; ci < cells1.size(); ++ci) {
        if (static_cast<int>(cells1[ci].size()) <= 2 * c) continue;
        for (size_t cj = ci; cj < cells1.size(); ++cj) {
            if (static_cast<int>(cells1[cj].size()) <= 2 * c) continue;
            int rep = cells1[ci].front();
            int d = 0;
            for (int u : cells1[cj])
                if (u != rep && r1.adjacent(rep, u)) ++d;
            if (d <= c) continue;
            for (int x : cells1[ci])
                for (int y : cells2[cj])
                    if (!combined.adjacent(x, offset + y)) combined.add_edge(x, offset + y);
            if (ci != cj) {
                for (int x : cells1[cj])
                    for (int y : cells2[ci])
                        if (!combined.adjacent(x, offset + y)) combined.add_edge(x, offset + y);
            }
        }
    }

    ColoredGraph combined_refined = naive_refine(combined).recolored(combined);
    if (!is_gen_valence_at_most(combined_refined, 2 * c))
        throw std::logic_error("combined graph exceeds generalized color valence 2c");

    PermutationGroup aut = gen_color_valence_aut(combined, 2 * c, budget);
    auto orbit = aut.orbit(apex1_local);
    return std::binary_search(orbit.begin(), orbit.end(), offset + apex2_local);
}

// ---------------------------------------------------------------------------
// class solvers

ColoredGraph refine_by_adjacency_tuple(const ColoredGraph& g, const std::vector<int>& tuple) {
    std::vector<int> pos(static_cast<size_t>(g.size()), -1);
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= g.size()) throw contract_error("tuple vertex out of range");
        pos[static_cast<size_t>(tuple[i])] = static_cast<int>(i);
    }
    std::vector<std::pair<std::vector<int>, int>> keyed(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> key{g.color(v)};
        if (pos[static_cast<size_t>(v)] >= 0) {
            key.push_back(0);
            key.push_back(pos[static_cast<size_t>(v)]);
        } else {
            key.push_back(1);
            for (int s : tuple) key.push_back(g.adjacent(v, s) ? 1 : 0);
        }
        keyed[static_cast<size_t>(v)] = {std::move(key), v};
    }
    std::vector<int> order(static_cast<size_t>(g.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return keyed[static_cast<size_t>(a)].first < keyed[static_cast<size_t>(b)].first;
    });
    ColoredGraph out = g;
    int next = -1;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || keyed[static_cast<size_t>(order[i])].first != keyed[static_cast<size_t>(order[i - 1])].first)
            ++next;
        out.set_color(order[i], next);
    }
    out.set_color_count(g.size() == 0 ? 1 : next + 1);
    return out;
}

namespace {

ColoredGraph double_star(int s) {
    auto star = build_named(GraphFamily::biclique(1, s));
    return disjoint_union(star, star);
}

// ordered tuples of distinct vertices, by length then lexicographically
void enumerate_tuples(int n, int len, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> tuple;
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::function<bool(void)> rec = [&]() -> bool {
        if (static_cast<int>(tuple.size()) == len) return visit(tuple);
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            used[static_cast<size_t>(v)] = 1;
            tuple.push_back(v);
            if (rec()) return true;
            tuple.pop_back();
            used[static_cast<size_t>(v)] = 0;
        }
        return false;
    };
    rec();
}

int refined_gen_valence(const ColoredGraph& g, const std::vector<int>& tuple) {
    ColoredGraph ind = individualize_tuple(g, tuple);
    return min_gen_valence(naive_refine(ind).recolored(ind));
}

} // namespace

bool double_star_kt_iso(const ColoredGraph& g1, const ColoredGraph& g2, int s, int t, Budget* budget,
                        const ClassSolverConfig& config, ClassSolverStats* stats) {
    std::vector<ColoredGraph> forbidden{double_star(s), build_named(GraphFamily::complete(t))};
    if (!is_in_class(g1, forbidden, budget) || !is_in_class(g2, forbidden, budget))
        throw contract_error("double_star_kt_iso: input outside the (K_{1,s} u K_{1,s}, K_t)-free class");
    if (g1.size() != g2.size()) return false;
    if (g1.size() == 0) return true;

    int shared = std::max(g1.color_count(), g2.color_count());
    ColoredGraph h1 = g1, h2 = g2;
    h1.set_color_count(shared);
    h2.set_color_count(shared);

    // grow an individualization set on g1 greedily until the refined graph
    // has small generalized color valence; adding a vertex of a large star
    // first mirrors the structure argument
    std::vector<int> s1;
    int best_val = refined_gen_valence(h1, s1);
    while (best_val > config.valence_cap && static_cast<int>(s1.size()) < config.individualize_cap) {
        // candidate scored by resulting valence, then by star size (degree)
        int best_vertex = -1;
        std::tuple<int, int, int> best_score{best_val, 0, 0};
        for (int v = 0; v < h1.size(); ++v) {
            if (std::find(s1.begin(), s1.end(), v) != s1.end()) continue;
            auto candidate = s1;
            candidate.push_back(v);
            std::tuple<int, int, int> score{refined_gen_valence(h1, candidate), -h1.degree(v), v};
            if (best_vertex < 0 || score < best_score) {
                best_score = score;
                best_vertex = v;
            }
        }
        if (best_vertex < 0 || std::get<0>(best_score) >= best_val) break;
        s1.push_back(best_vertex);
        best_val = std::get<0>(best_score);
    }
    if (stats) stats->individualized = static_cast<int>(s1.size());

    if (best_val > config.valence_cap) {
        if (!config.allow_ir_fallback)
            throw budget_exhausted("double_star_kt_iso individualization search");
        if (stats) stats->used_fallback = true;
        std::cerr << "double_star_kt_iso: no qualifying individualization set within bounds; "
                     "falling back to the general engine\n";
        return ir_iso(h1, h2, budget).has_value();
    }

    int c_used = std::max(1, best_val);
    if (s1.empty()) return gen_color_valence_iso(h1, h2, c_used, budget);

    bool found = false;
    enumerate_tuples(h2.size(), static_cast<int>(s1.size()), [&](const std::vector<int>& s2) {
        if (budget) budget->tick("double_star lockstep");
        if (refined_gen_valence(h2, s2) != best_val) return false;
        ColoredGraph i1 = individualize_tuple(h1, s1);
        ColoredGraph i2 = individualize_tuple(h2, s2);
        auto [r1, r2] = joint_refine(i1, i2);
        if (!class_size_multisets_match(r1, r2)) return false;
        if (gen_color_valence_iso(i1, i2, c_used, budget)) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

// ---------------------------------------------------------------------------
// (P5, K_t)

namespace {

std::vector<std::vector<int>> class_component_modules(const ColoredGraph& refined) {
    auto cells = color_cells(refined);
    std::vector<std::vector<int>> modules;
    for (const auto& cell : cells) {
        if (cell.empty()) continue;
        ColoredGraph sub = induced_subgraph(refined, cell);
        for (const auto& comp : connected_components(sub)) {
            std::vector<int> global;
            for (int x : comp) global.push_back(cell[static_cast<size_t>(x)]);
            std::sort(global.begin(), global.end());
            modules.push_back(std::move(global));
        }
    }
    return modules;
}

bool all_components_are_modules(const ColoredGraph& refined) {
    for (const auto& m : class_component_modules(refined))
        if (!is_colored_module(refined, m)) return false;
    return true;
}

bool is_dominating(const ColoredGraph& g, const std::vector<int>& s) {
    std::vector<char> in_s(static_cast<size_t>(g.size()), 0);
    for (int v : s) in_s[static_cast<size_t>(v)] = 1;
    for (int v = 0; v < g.size(); ++v) {
        if (in_s[static_cast<size_t>(v)]) continue;
        bool dominated = false;
        for (int u : g.neighbors(v))
            if (in_s[static_cast<size_t>(u)]) dominated = true;
        if (!dominated) return false;
    }
    return true;
}

// subsets in (size, lexicographic) order
void enumerate_subsets(int n, int max_size, const std::function<bool(const std::vector<int>&)>& visit) {
    for (int size = 1; size <= max_size; ++size) {
        std::vector<int> subset;
        std::function<bool(int)> rec = [&](int from) -> bool {
            if (static_cast<int>(subset.size()) == size) return visit(subset);
            for (int v = from; v < n; ++v) {
                subset.push_back(v);
                if (rec(v + 1)) return true;
                subset.pop_back();
            }
            return false;
        };
        if (rec(0)) return;
    }
}

bool p5_kt_connected(const ColoredGraph& g1, const ColoredGraph& g2, int t, Budget* budget,
                     const ClassSolverConfig& config);

bool p5_kt_impl(const ColoredGraph& g1, const ColoredGraph& g2, int t, Budget* budget,
                const ClassSolverConfig& config) {
    if (g1.size() != g2.size()) return false;
    {
        std::vector<int> c1 = g1.colors(), c2 = g2.colors();
        std::sort(c1.begin(), c1.end());
        std::sort(c2.begin(), c2.end());
        if (c1 != c2) return false;
    }
    if (g1.size() <= 1) return true;
    if (t <= 2) return true; // both edgeless with equal color multisets

    auto comps1 = connected_components(g1);
    auto comps2 = connected_components(g2);
    if (comps1.size() != comps2.size()) return false;
    if (comps1.size() > 1) {
        // multiset matching of the components through a session
        InvariantSession session([&](const ColoredGraph& a, const ColoredGraph& b) {
            return a.size() == b.size() && p5_kt_connected(a, b, t, budget, config);
        });
        std::vector<InvariantValue> v1, v2;
        for (const auto& comp : comps1) v1.push_back(session.query(induced_subgraph(g1, comp)));
        for (const auto& comp : comps2) v2.push_back(session.query(induced_subgraph(g2, comp)));
        std::sort(v1.begin(), v1.end());
        std::sort(v2.begin(), v2.end());
        return v1 == v2;
    }
    return p5_kt_connected(g1, g2, t, budget, config);
}

bool p5_kt_connected(const ColoredGraph& g1, const ColoredGraph& g2, int t, Budget* budget,
                     const ClassSolverConfig& config) {
    // recursion invariant: modules handed down the clique recursion stay in
    // class
    std::vector<ColoredGraph> forbidden{build_named(GraphFamily::path(5)),
                                        build_named(GraphFamily::complete(t))};
    if (!is_in_class(g1, forbidden, budget) || !is_in_class(g2, forbidden, budget))
        throw std::logic_error("p5 recursion left the (P5, K_t)-free class");
    int shared = std::max(g1.color_count(), g2.color_count());
    ColoredGraph h1 = g1, h2 = g2;
    h1.set_color_count(shared);
    h2.set_color_count(shared);

    // dominating set whose adjacency refinement turns class components into
    // modules; searched in (size, lex) order for determinism
    std::vector<int> s1;
    bool found_s1 = false;
    enumerate_subsets(h1.size(), std::min(h1.size(), config.dominating_cap),
                      [&](const std::vector<int>& candidate) {
                          if (budget) budget->tick("p5 dominating search");
                          if (!is_dominating(h1, candidate)) return false;
                          ColoredGraph refined = refine_by_adjacency_tuple(h1, candidate);
                          if (!all_components_are_modules(refined)) return false;
                          s1 = candidate;
                          found_s1 = true;
                          return true;
                      });
    if (!found_s1) throw budget_exhausted("p5_kt_iso dominating-set search");

    bool answer = false;
    enumerate_tuples(h2.size(), static_cast<int>(s1.size()), [&](const std::vector<int>& s2) {
        if (budget) budget->tick("p5 lockstep");
        if (!is_dominating(h2, s2)) return false;
        ColoredGraph r1 = refine_by_adjacency_tuple(h1, s1);
        ColoredGraph r2 = refine_by_adjacency_tuple(h2, s2);
        if (!class_size_multisets_match(r1, r2)) return false;
        if (!all_components_are_modules(r2)) return false;

        auto modules1 = class_component_modules(r1);
        auto modules2 = class_component_modules(r2);
        if (modules1.size() != modules2.size()) return false;

        // isomorphism types of the modules via recursion on the clique bound
        InvariantSession session([&](const ColoredGraph& a, const ColoredGraph& b) {
            return p5_kt_impl(a, b, t - 1, budget, config);
        });
        ColorTable table;
        auto build_quotient = [&](const ColoredGraph& r, const std::vector<std::vector<int>>& modules) {
            ColoredGraph q(static_cast<int>(modules.size()));
            for (size_t i = 0; i < modules.size(); ++i) {
                InvariantValue inv = session.query(induced_subgraph(r, modules[i]));
                std::ostringstream desc;
                desc << "p5q|" << r.color(modules[i].front()) << "|" << inv.bytes;
                q.set_color(static_cast<int>(i), table.intern(desc.str()));
            }
            for (size_t i = 0; i < modules.size(); ++i)
                for (size_t j = i + 1; j < modules.size(); ++j)
                    if (r.adjacent(modules[i].front(), modules[j].front()))
                        q.add_edge(static_cast<int>(i), static_cast<int>(j));
            q.set_color_count(table.size() + 1);
            return q;
        };
        ColoredGraph q1 = build_quotient(r1, modules1);
        ColoredGraph q2 = build_quotient(r2, modules2);
        q1.set_color_count(table.size() + 1);
        q2.set_color_count(table.size() + 1);

        auto [f1, f2] = joint_refine(q1, q2);
        int c_used = std::max({1, color_valence(f1), color_valence(f2)});
        if (bounded_color_valence_iso(q1, q2, c_used, budget)) {
            answer = true;
            return true;
        }
        return false;
    });
    return answer;
}

} // namespace

bool p5_kt_iso(const ColoredGraph& g1, const ColoredGraph& g2, int t, Budget* budget,
               const ClassSolverConfig& config) {
    std::vector<ColoredGraph> forbidden{build_named(GraphFamily::path(5)),
                                        build_named(GraphFamily::complete(t))};
    if (!is_in_class(g1, forbidden, budget) || !is_in_class(g2, forbidden, budget))
        throw contract_error("p5_kt_iso: input outside the (P5, K_t)-free class");
    return p5_kt_impl(g1, g2, t, budget, config);
}

// ---------------------------------------------------------------------------
// (H(1,b,0), K_s)

bool h1b0_ks_iso(const ColoredGraph& g1, const ColoredGraph& g2, int b, int s, Budget* budget,
                 const ClassSolverConfig& config) {
    if (b < 1) throw contract_error("h1b0_ks_iso requires b >= 1");
    ColoredGraph pattern = build_named(GraphFamily::subdivided_star({1, b, 0}));
    std::vector<ColoredGraph> forbidden{pattern, build_named(GraphFamily::complete(s))};
    if (!is_in_class(g1, forbidden, budget) || !is_in_class(g2, forbidden, budget))
        throw contract_error("h1b0_ks_iso: input outside the (H(1,b,0), K_s)-free class");
    if (g1.size() != g2.size()) return false;
    if (g1.size() == 0) return true;

    ColoredGraph dstar = double_star(2 * b - 1);
    bool free1 = !contains_induced(dstar, g1, budget).has_value();
    bool free2 = !contains_induced(dstar, g2, budget).has_value();
    if (free1 != free2) return false;
    if (free1) return double_star_kt_iso(g1, g2, 2 * b - 1, s, budget, config);

    // decomposition route: prime graphs of the classical functor cannot
    // contain the double star, so the double-star engine decides them
    ColorTable table;
    InvariantSession session([&](const ColoredGraph& a, const ColoredGraph& c) {
        if (a.size() != c.size()) return false;
        bool a_free = !contains_induced(dstar, a, budget).has_value();
        bool c_free = !contains_induced(dstar, c, budget).has_value();
        if (!a_free || !c_free)
            throw std::logic_error("prime graph contains the double star");
        return double_star_kt_iso(a, c, 2 * b - 1, s, budget, config);
    });
    ModuleInvariant prime_inv = [&](const ColoredGraph& prime) { return session.query(prime); };
    InvariantValue v1 =
        decomposition_invariant(g1, classical_functor, keep_one_per_adjacency_type, prime_inv, table);
    InvariantValue v2 =
        decomposition_invariant(g2, classical_functor, keep_one_per_adjacency_type, prime_inv, table);
    return v1 == v2;
}

} // namespace isokit
