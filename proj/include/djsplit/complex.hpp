#ifndef DJSPLIT_COMPLEX_HPP
#define DJSPLIT_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace djsplit {

using Vertex = int;

/// Malformed external input (facet files, JSON payloads, family specs).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a hard size guard.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A face: strictly increasing list of 1-indexed vertices.  The empty
/// list is the empty face.
class Face {
public:
    Face() = default;

    /// Sorts the vertices; rejects duplicates and vertices < 1.
    explicit Face(std::vector<Vertex> vertices) : verts_(std::move(vertices)) {
        std::sort(verts_.begin(), verts_.end());
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (verts_[i] < 1)
                throw std::invalid_argument("face vertex must be >= 1");
            if (i > 0 && verts_[i] == verts_[i - 1])
                throw std::invalid_argument("duplicate vertex " + std::to_string(verts_[i]) +
                                            " in face");
        }
    }

    Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

    const std::vector<Vertex>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    bool empty() const { return verts_.empty(); }
    Vertex max_vertex() const { return verts_.empty() ? 0 : verts_.back(); }

    bool contains(Vertex v) const {
        return std::binary_search(verts_.begin(), verts_.end(), v);
    }

    bool subset_of(const Face& other) const {
        return std::includes(other.verts_.begin(), other.verts_.end(), verts_.begin(),
                             verts_.end());
    }

    /// This face with one more vertex (must not already be present).
    Face with(Vertex v) const {
        std::vector<Vertex> w(verts_);
        w.insert(std::upper_bound(w.begin(), w.end(), v), v);
        return Face(std::move(w));
    }

    bool operator==(const Face& other) const { return verts_ == other.verts_; }

    /// Canonical order: by cardinality, then lexicographic.
    bool operator<(const Face& other) const {
        if (verts_.size() != other.verts_.size()) return verts_.size() < other.verts_.size();
        return verts_ < other.verts_;
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(verts_[i]);
        }
        return s + "}";
    }

private:
    std::vector<Vertex> verts_;
};

struct FaceHash {
    std::size_t operator()(const Face& f) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (Vertex v : f.vertices())
            h = h * 0x100000001b3ull ^ static_cast<std::size_t>(v);
        return h;
    }
};

/// A finite abstract simplicial complex on the vertex set [m], stored by
/// its facets (inclusion-maximal faces).  Immutable after construction;
/// all queries are const and safe to call concurrently.  The face set is
/// the downward closure of the facets and always contains the empty face.
///
/// Copies share the underlying data, so passing complexes by value is
/// cheap and derived caches (face list, minimal non-faces, 1-skeleton)
/// are computed at most once.
class SimplicialComplex {
public:
    /// Face enumeration refuses to materialize more than this many faces.
    static constexpr std::int64_t kFaceCap = std::int64_t(1) << 24;

    /// Builds the complex with the inclusion-maximal input faces as
    /// facets (subsumed faces are dropped).  Vertices must lie in [1,m].
    SimplicialComplex(int m, std::vector<Face> faces) {
        if (m < 1) throw std::invalid_argument("vertex count m must be positive");
        for (const Face& f : faces) {
            if (f.max_vertex() > m)
                throw std::invalid_argument("face " + f.to_string() + " exceeds vertex count m=" +
                                            std::to_string(m));
        }
        // Antichain normalization: keep only inclusion-maximal faces.
        std::sort(faces.begin(), faces.end(),
                  [](const Face& a, const Face& b) { return a.size() > b.size(); });
        std::vector<Face> maximal;
        for (const Face& f : faces) {
            if (f.empty()) continue;
            bool subsumed = false;
            for (const Face& g : maximal) {
                if (f.subset_of(g)) {
                    subsumed = true;
                    break;
                }
            }
            if (!subsumed && std::find(maximal.begin(), maximal.end(), f) == maximal.end())
                maximal.push_back(f);
        }
        std::sort(maximal.begin(), maximal.end());
        auto impl = std::make_shared<Impl>();
        impl->m = m;
        impl->facets = std::move(maximal);
        impl_ = std::move(impl);
    }

    int vertex_count() const { return impl_->m; }

    const std::vector<Face>& facets() const { return impl_->facets; }

    /// dim K = max facet cardinality - 1; -1 for the complex whose only
    /// face is the empty face.
    int dimension() const {
        int d = -1;
        for (const Face& f : impl_->facets) d = std::max(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    /// A subset of [m] is a face iff it is contained in some facet.
    bool is_face(const Face& f) const {
        if (f.empty()) return true;
        if (f.max_vertex() > impl_->m) return false;
        for (const Face& g : impl_->facets)
            if (f.subset_of(g)) return true;
        return false;
    }

    /// All faces (downward closure of the facets, including the empty
    /// face), sorted by (cardinality, lex).  Throws SizeGuardError when
    /// the face count would exceed kFaceCap.
    const std::vector<Face>& faces() const {
        std::call_once(impl_->closure_once, [this] { compute_closure(); });
        return impl_->faces;
    }

    /// Inclusion-minimal subsets of [m] that are not faces, sorted by
    /// (cardinality, lex).  A singleton appears here exactly when its
    /// vertex is a ghost.
    const std::vector<Face>& minimal_non_faces() const {
        std::call_once(impl_->closure_once, [this] { compute_closure(); });
        return impl_->minimal_non_faces;
    }

    /// All 2-element faces.
    const std::vector<Face>& one_skeleton() const {
        std::call_once(impl_->skeleton_once, [this] {
            std::vector<Face> edges;
            for (const Face& f : impl_->facets) {
                const auto& vs = f.vertices();
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j)
                        edges.push_back(Face{vs[i], vs[j]});
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            impl_->skeleton = std::move(edges);
        });
        return impl_->skeleton;
    }

    /// f-vector (f_{-1}, f_0, ..., f_{dim}); f_{-1} = 1 for the empty face.
    std::vector<long long> f_vector() const {
        const auto& fs = faces();
        std::vector<long long> fv(static_cast<std::size_t>(dimension()) + 2, 0);
        for (const Face& f : fs) ++fv[f.size()];
        return fv;
    }

    /// Vertices j in [m] with {j} not a face.  They carry v_j = 0 in the
    /// face ring and no coloring constraint.
    std::vector<Vertex> ghost_vertices() const {
        std::vector<Vertex> ghosts;
        for (Vertex j = 1; j <= impl_->m; ++j)
            if (!is_face(Face{j})) ghosts.push_back(j);
        return ghosts;
    }

    bool operator==(const SimplicialComplex& other) const {
        if (impl_ == other.impl_) return true;
        return impl_->m == other.impl_->m && impl_->facets == other.impl_->facets;
    }

    /// True when both handles share storage (constant-time ambient check).
    bool shares_storage(const SimplicialComplex& other) const { return impl_ == other.impl_; }

private:
    struct Impl {
        int m = 0;
        std::vector<Face> facets;
        mutable std::once_flag closure_once;
        mutable std::vector<Face> faces;
        mutable std::vector<Face> minimal_non_faces;
        mutable std::once_flag skeleton_once;
        mutable std::vector<Face> skeleton;
    };

    // Level-by-level closure: a candidate of size k+1 whose k-subsets are
    // all faces is either a face or a minimal non-face.
    void compute_closure() const {
        const Impl& im = *impl_;
        for (const Face& f : im.facets)
            if (f.size() > 24)
                throw SizeGuardError("face enumeration refused: facet " + f.to_string() +
                                     " alone spans more than 2^24 subsets");
        std::vector<Face> all;
        std::vector<Face> mnf;
        std::int64_t count = 1;  // the empty face
        std::unordered_set<Face, FaceHash> level;
        level.insert(Face{});
        all.push_back(Face{});
        while (!level.empty()) {
            std::unordered_set<Face, FaceHash> next;
            std::unordered_set<Face, FaceHash> seen;
            for (const Face& alpha : level) {
                for (Vertex w = 1; w <= im.m; ++w) {
                    if (alpha.contains(w)) continue;
                    Face sigma = alpha.with(w);
                    if (!seen.insert(sigma).second) continue;
                    // minimality filter: every |sigma|-1 subset must be a face
                    bool supported = true;
                    for (std::size_t drop = 0; drop < sigma.size() && supported; ++drop) {
                        std::vector<Vertex> sub;
                        sub.reserve(sigma.size() - 1);
                        for (std::size_t i = 0; i < sigma.size(); ++i)
                            if (i != drop) sub.push_back(sigma.vertices()[i]);
                        if (!level.count(Face(std::move(sub)))) supported = false;
                    }
                    if (!supported) continue;
                    if (is_face(sigma)) {
                        next.insert(sigma);
                        if (++count > kFaceCap)
                            throw SizeGuardError(
                                "face enumeration refused: face count exceeds 2^24");
                    } else {
                        mnf.push_back(sigma);
                    }
                }
            }
            for (const Face& f : next) all.push_back(f);
            level = std::move(next);
        }
        std::sort(all.begin(), all.end());
        std::sort(mnf.begin(), mnf.end());
        im.faces = std::move(all);
        im.minimal_non_faces = std::move(mnf);
    }

    std::shared_ptr<const Impl> impl_;
};

namespace detail {

inline bool parse_int(std::string_view tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) return false;
    long long val = 0;
    for (; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9') return false;
        if (val > (std::numeric_limits<long long>::max() - 9) / 10) return false;  // overflow
        val = val * 10 + (tok[i] - '0');
    }
    out = (tok[0] == '-') ? -val : val;
    return true;
}

}  // namespace detail

/// Parses the facet-list text format: '#' starts a comment, an optional
/// first line `m=<int>` declares the vertex count, and every other
/// non-blank line lists the 1-indexed vertices of one face.  The complex
/// is the downward closure of the inclusion-maximal lines; when no header
/// is present m is the largest vertex seen.
inline SimplicialComplex parse_facets(std::string_view text) {
    constexpr long long kMaxDeclaredM = 1000000;
    std::vector<Face> faces;
    long long declared_m = -1;
    bool header_allowed = true;
    long long max_seen = 0;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        if (header_allowed && line.rfind("m", 0) == 0) {
            std::string_view rest = line.substr(1);
            std::size_t nb = rest.find_first_not_of(" \t");
            if (nb != std::string_view::npos && rest[nb] == '=') {
                rest = rest.substr(nb + 1);
                nb = rest.find_first_not_of(" \t");
                rest = (nb == std::string_view::npos) ? std::string_view{} : rest.substr(nb);
                long long mval = 0;
                if (!detail::parse_int(rest, mval))
                    throw ParseError("line " + std::to_string(lineno) + ": malformed m= header");
                if (mval < 1)
                    throw ParseError("line " + std::to_string(lineno) +
                                     ": m must be a positive integer");
                if (mval > kMaxDeclaredM)
                    throw ParseError("line " + std::to_string(lineno) + ": m=" +
                                     std::to_string(mval) + " exceeds the supported maximum " +
                                     std::to_string(kMaxDeclaredM));
                declared_m = mval;
                header_allowed = false;
                continue;
            }
        }
        header_allowed = false;

        std::vector<Vertex> verts;
        std::istringstream iss{std::string(line)};
        std::string tok;
        while (iss >> tok) {
            long long v = 0;
            if (!detail::parse_int(tok, v))
                throw ParseError("line " + std::to_string(lineno) + ": malformed token '" + tok +
                                 "'");
            if (v < 1)
                throw ParseError("line " + std::to_string(lineno) + ": vertex index " +
                                 std::to_string(v) + " is not >= 1");
            if (declared_m >= 0 && v > declared_m)
                throw ParseError("line " + std::to_string(lineno) + ": vertex " +
                                 std::to_string(v) + " exceeds declared m=" +
                                 std::to_string(declared_m));
            if (v > kMaxDeclaredM)
                throw ParseError("line " + std::to_string(lineno) + ": vertex " +
                                 std::to_string(v) + " exceeds the supported maximum");
            verts.push_back(static_cast<Vertex>(v));
            max_seen = std::max(max_seen, v);
        }
        if (verts.empty()) continue;
        try {
            faces.emplace_back(std::move(verts));
        } catch (const std::invalid_argument& ex) {
            throw ParseError("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    if (faces.empty()) throw ParseError("empty document: no faces listed");
    int m = static_cast<int>(declared_m >= 0 ? declared_m : max_seen);
    return SimplicialComplex(m, std::move(faces));
}

/// Facet-list text for a complex, parseable by parse_facets.
inline std::string to_facet_text(const SimplicialComplex& K) {
    std::string out = "m=" + std::to_string(K.vertex_count()) + "\n";
    for (const Face& f : K.facets()) {
        const auto& vs = f.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(vs[i]);
        }
        out += '\n';
    }
    return out;
}

/// Dual complex of a simple polytope from its vertex x facet incidence
/// matrix: one complex vertex per polytope facet, one complex facet per
/// polytope vertex (the set of polytope facets containing it).  Requires
/// every polytope vertex to lie on the same number of facets.
inline SimplicialComplex dual_of_simple_polytope(const std::vector<std::vector<bool>>& incidence) {
    if (incidence.empty() || incidence.front().empty())
        throw std::invalid_argument("empty incidence matrix");
    const std::size_t nfacets = incidence.front().size();
    std::vector<Face> faces;
    std::size_t degree = 0;
    for (std::size_t row = 0; row < incidence.size(); ++row) {
        if (incidence[row].size() != nfacets)
            throw std::invalid_argument("ragged incidence matrix");
        std::vector<Vertex> on;
        for (std::size_t col = 0; col < nfacets; ++col)
            if (incidence[row][col]) on.push_back(static_cast<Vertex>(col + 1));
        if (on.empty()) throw std::invalid_argument("polytope vertex on no facet");
        if (row == 0)
            degree = on.size();
        else if (on.size() != degree)
            throw std::invalid_argument(
                "polytope is not simple: vertex " + std::to_string(row + 1) + " lies on " +
                std::to_string(on.size()) + " facets, expected " + std::to_string(degree));
        faces.emplace_back(std::move(on));
    }
    return SimplicialComplex(static_cast<int>(nfacets), std::move(faces));
}

/// Full simplex on [m].
inline SimplicialComplex make_simplex(int m) {
    if (m < 1) throw std::invalid_argument("simplex needs m >= 1");
    std::vector<Vertex> all(m);
    for (int i = 0; i < m; ++i) all[i] = i + 1;
    return SimplicialComplex(m, {Face(std::move(all))});
}

/// Boundary of the (m-1)-simplex: all (m-1)-subsets of [m].
inline SimplicialComplex make_simplex_boundary(int m) {
    if (m < 2) throw std::invalid_argument("simplex boundary needs m >= 2");
    std::vector<Face> facets;
    for (int skip = 1; skip <= m; ++skip) {
        std::vector<Vertex> vs;
        for (int v = 1; v <= m; ++v)
            if (v != skip) vs.push_back(v);
        facets.emplace_back(std::move(vs));
    }
    return SimplicialComplex(m, std::move(facets));
}

/// k-cycle: edges {i,i+1} and {k,1}.
inline SimplicialComplex make_cycle(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs k >= 3");
    std::vector<Face> facets;
    for (int i = 1; i < k; ++i) facets.push_back(Face{i, i + 1});
    facets.push_back(Face{1, k});
    return SimplicialComplex(k, std::move(facets));
}

/// Boundary of the d-dimensional cross-polytope: m = 2d vertices with
/// antipodal pairs {i, i+d}; facets pick one vertex from every pair.
inline SimplicialComplex make_cross_polytope(int d) {
    if (d < 1) throw std::invalid_argument("cross-polytope needs d >= 1");
    if (d > 20) throw SizeGuardError("cross-polytope dimension too large");
    std::vector<Face> facets;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<Vertex> vs;
        for (int i = 0; i < d; ++i) vs.push_back((mask >> i & 1u) ? i + 1 + d : i + 1);
        facets.emplace_back(std::move(vs));
    }
    return SimplicialComplex(2 * d, std::move(facets));
}

/// m isolated vertices.
inline SimplicialComplex make_edgeless(int m) {
    if (m < 1) throw std::invalid_argument("edgeless complex needs m >= 1");
    std::vector<Face> facets;
    for (int v = 1; v <= m; ++v) facets.push_back(Face{v});
    return SimplicialComplex(m, std::move(facets));
}

/// Join K * L on the disjoint union of vertex sets (L's vertices are
/// shifted by K's vertex count); faces are unions of a face from each side.
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    const int shift = a.vertex_count();
    auto afacets = a.facets();
    auto bfacets = b.facets();
    if (afacets.empty()) afacets.push_back(Face{});
    if (bfacets.empty()) bfacets.push_back(Face{});
    std::vector<Face> facets;
    for (const Face& fa : afacets) {
        for (const Face& fb : bfacets) {
            std::vector<Vertex> vs = fa.vertices();
            for (Vertex v : fb.vertices()) vs.push_back(v + shift);
            facets.emplace_back(std::move(vs));
        }
    }
    return SimplicialComplex(shift + b.vertex_count(), std::move(facets));
}

/// Named test-corpus families: "cycle k", "simplex m", "simplex-boundary m",
/// "cross-polytope d", "edgeless m".
inline SimplicialComplex generate_family(std::string_view name, std::span<const int> params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw ParseError("family '" + std::string(name) + "' expects " + std::to_string(n) +
                             " parameter(s), got " + std::to_string(params.size()));
    };
    try {
        if (name == "cycle") {
            need(1);
            return make_cycle(params[0]);
        }
        if (name == "simplex") {
            need(1);
            return make_simplex(params[0]);
        }
        if (name == "simplex-boundary") {
            need(1);
            return make_simplex_boundary(params[0]);
        }
        if (name == "cross-polytope") {
            need(1);
            return make_cross_polytope(params[0]);
        }
        if (name == "edgeless") {
            need(1);
            return make_edgeless(params[0]);
        }
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string(ex.what()));
    }
    throw ParseError("unknown family '" + std::string(name) +
                     "' (known: cycle, simplex, simplex-boundary, cross-polytope, edgeless)");
}

}  // namespace djsplit

#endif  // DJSPLIT_COMPLEX_HPP
