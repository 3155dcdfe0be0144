#include "kstab/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace kstab {

LatticeChart::LatticeChart(Mat basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
        throw std::invalid_argument("LatticeChart: basis must be square and nonempty");
    Rational det = determinant(basis_);
    if (det == 0) throw std::invalid_argument("LatticeChart: basis vectors are dependent");
    const Eigen::Index n = basis_.rows();
    basis_inv_ = Mat::Zero(n, n);
    Vec e = Vec::Zero(n), col;
    for (Eigen::Index j = 0; j < n; ++j) {
        e[j] = 1;
        solve_linear(basis_, e, col);
        basis_inv_.col(j) = col;
        e[j] = 0;
    }
    mu_factor_ = 1 / abs_rational(det);
}

LatticeChart LatticeChart::standard(int dim) {
    Mat b = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) b(i, i) = 1;
    return LatticeChart(b);
}

namespace {

// Enumerate k-subsets of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > n || k < 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Lattice-normalized coordinates of facet points in the facet frame:
// solves frame * t = p - base using r-1 independent rows.
Vec frame_coordinates(const Mat& frame, const Vec& base, const Vec& p) {
    const Eigen::Index r = frame.rows(), k = frame.cols();
    if (k == 0) return Vec();
    // Select k independent rows of the frame.
    std::vector<Eigen::Index> rows;
    Mat sub(0, k);
    for (Eigen::Index i = 0; i < r && static_cast<Eigen::Index>(rows.size()) < k; ++i) {
        Mat cand(rows.size() + 1, k);
        for (size_t j = 0; j < rows.size(); ++j) cand.row(j) = frame.row(rows[j]);
        cand.row(rows.size()) = frame.row(i);
        if (rank_of(cand) == static_cast<int>(rows.size()) + 1) rows.push_back(i);
    }
    Mat a(k, k);
    Vec b(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        a.row(i) = frame.row(rows[i]);
        b[i] = p[rows[i]] - base[rows[i]];
    }
    Vec t;
    if (!solve_linear(a, b, t))
        throw std::logic_error("frame_coordinates: degenerate facet frame");
    return t;
}

}  // namespace

std::optional<LatticePolytope> LatticePolytope::build(LatticeChart chart,
                                                      std::vector<HalfSpace> inequalities,
                                                      bool throw_on_degenerate) {
    const int r = chart.dim();
    for (const auto& hs : inequalities) {
        if (hs.normal.size() != r)
            throw std::invalid_argument("LatticePolytope: normal dimension mismatch");
        bool nonzero = false;
        for (Eigen::Index i = 0; i < r; ++i)
            if (hs.normal[i] != 0) nonzero = true;
        if (!nonzero) throw std::invalid_argument("LatticePolytope: zero normal");
    }
    const int m = static_cast<int>(inequalities.size());

    // Boundedness: the recession cone {x : A x <= 0} must be trivial.
    Mat all_normals(m, r);
    for (int i = 0; i < m; ++i) all_normals.row(i) = inequalities[i].normal.transpose();
    if (rank_of(all_normals) < r)
        throw std::invalid_argument("LatticePolytope: unbounded inequality system");
    bool unbounded = false;
    auto check_direction = [&](const Vec& d) {
        bool nonzero = false, le = true, ge = true;
        for (int i = 0; i < m; ++i) {
            Rational v = dot(inequalities[i].normal, d);
            if (v > 0) le = false;
            if (v < 0) ge = false;
        }
        for (Eigen::Index i = 0; i < d.size(); ++i)
            if (d[i] != 0) nonzero = true;
        if (nonzero && (le || ge)) unbounded = true;
    };
    if (r == 1) {
        Vec d(1);
        d[0] = 1;
        check_direction(d);
    } else {
        for_each_subset(m, r - 1, [&](const std::vector<int>& idx) {
            if (unbounded) return;
            Mat sub(r - 1, r);
            for (int i = 0; i < r - 1; ++i) sub.row(i) = inequalities[idx[i]].normal.transpose();
            if (rank_of(sub) < r - 1) return;
            Vec d = kernel_vector(sub);
            if (d.size() == r) check_direction(d);
        });
    }
    if (unbounded) throw std::invalid_argument("LatticePolytope: unbounded inequality system");

    // Vertex enumeration: intersect every r-subset of boundary
    // hyperplanes, keep feasible intersection points.
    std::vector<Vec> verts;
    for_each_subset(m, r, [&](const std::vector<int>& idx) {
        Mat a(r, r);
        Vec b(r);
        for (int i = 0; i < r; ++i) {
            a.row(i) = inequalities[idx[i]].normal.transpose();
            b[i] = inequalities[idx[i]].offset;
        }
        Vec x;
        if (!solve_linear(a, b, x)) return;
        for (int i = 0; i < m; ++i) {
            if (dot(inequalities[i].normal, x) > inequalities[i].offset) return;
        }
        verts.push_back(x);
    });
    std::sort(verts.begin(), verts.end(), lex_less);
    verts.erase(std::unique(verts.begin(), verts.end(),
                            [](const Vec& a, const Vec& b) { return a == b; }),
                verts.end());

    auto degenerate = [&](const std::string& why) -> std::optional<LatticePolytope> {
        if (throw_on_degenerate) throw std::invalid_argument("LatticePolytope: " + why);
        return std::nullopt;
    };
    if (verts.empty()) return degenerate("empty feasible set");

    LatticePolytope p;
    p.chart_ = std::move(chart);
    p.inequalities_ = std::move(inequalities);
    p.vertices_ = std::move(verts);
    if (p.affine_dims_check() < r) return degenerate("interior is empty (not full-dimensional)");

    p.finish_construction();
    return p;
}

int LatticePolytope::affine_dims_check() const {
    std::vector<int> all(vertices_.size());
    for (size_t i = 0; i < vertices_.size(); ++i) all[i] = static_cast<int>(i);
    return affine_dim(all);
}

void LatticePolytope::finish_construction() {
    const int r = dim();
    const int m = static_cast<int>(inequalities_.size());

    vertex_active_.assign(vertices_.size(), {});
    for (size_t v = 0; v < vertices_.size(); ++v) {
        for (int i = 0; i < m; ++i) {
            if (dot(inequalities_[i].normal, vertices_[v]) == inequalities_[i].offset)
                vertex_active_[v].push_back(i);
        }
    }

    // Facets: inequalities whose active vertex set is (r-1)-dimensional.
    // Inequalities supporting the same geometric facet are grouped; the
    // smallest inequality index names the facet.
    std::set<std::vector<int>> seen;
    for (int i = 0; i < m; ++i) {
        std::vector<int> ids;
        for (size_t v = 0; v < vertices_.size(); ++v) {
            if (dot(inequalities_[i].normal, vertices_[v]) == inequalities_[i].offset)
                ids.push_back(static_cast<int>(v));
        }
        if (affine_dim(ids) != r - 1) continue;
        if (!seen.insert(ids).second) continue;

        Facet f;
        f.index = i;
        f.vertex_ids = ids;
        Vec ncoords = chart_.functional_ncoords(inequalities_[i].normal);
        f.normal = primitive_part(ncoords);
        Rational scale;
        for (Eigen::Index k = 0; k < ncoords.size(); ++k) {
            if (f.normal[k] != 0) {
                scale = ncoords[k] / Rational(f.normal[k]);
                break;
            }
        }
        f.offset = inequalities_[i].offset / scale;
        f.kernel_basis = kernel_lattice_basis(f.normal);
        f.base_point = vertices_[ids.front()];  // ids sorted, vertices lex-sorted
        f.frame = Mat::Zero(r, r - 1);
        for (int k = 0; k < r - 1; ++k) f.frame.col(k) = chart_.to_ambient(ivec_to_vec(f.kernel_basis[k]));

        // Triangulate the facet and measure each simplex in the lattice
        // frame of M on the normal's kernel.
        f.sigma_volume = 0;
        for (const auto& simplex_ids : triangulate_face(ids, r - 1)) {
            Simplex s;
            for (int id : simplex_ids) s.vertices.push_back(vertices_[id]);
            if (r == 1) {
                s.lattice_normalized_volume = 1;  // points carry counting measure
            } else {
                Mat edges(r - 1, r - 1);
                Vec t0 = frame_coordinates(f.frame, f.base_point, s.vertices[0]);
                for (int k = 1; k < r; ++k) {
                    Vec tk = frame_coordinates(f.frame, f.base_point, s.vertices[k]);
                    edges.col(k - 1) = tk - t0;
                }
                s.lattice_normalized_volume =
                    abs_rational(determinant(edges)) / Rational(factorial(r - 1));
            }
            if (s.lattice_normalized_volume == 0)
                throw std::logic_error("LatticePolytope: degenerate facet simplex");
            f.sigma_volume += s.lattice_normalized_volume;
            f.triangulation.push_back(std::move(s));
        }
        facets_.push_back(std::move(f));
    }

    // Stellar triangulation of the whole polytope from the lex-least
    // vertex (vertex id 0 after sorting).
    volume_ = 0;
    const Vec& apex = vertices_[0];
    for (const auto& f : facets_) {
        if (std::find(f.vertex_ids.begin(), f.vertex_ids.end(), 0) != f.vertex_ids.end()) continue;
        for (const auto& fs : f.triangulation) {
            Simplex s;
            s.vertices.push_back(apex);
            for (const auto& v : fs.vertices) s.vertices.push_back(v);
            Mat edges(r, r);
            for (int k = 0; k < r; ++k) edges.col(k) = s.vertices[k + 1] - apex;
            s.lattice_normalized_volume =
                abs_rational(determinant(edges)) / Rational(factorial(r)) * chart_.mu_factor();
            if (s.lattice_normalized_volume == 0)
                throw std::logic_error("LatticePolytope: degenerate simplex in triangulation");
            volume_ += s.lattice_normalized_volume;
            triangulation_.push_back(std::move(s));
        }
    }
}

LatticePolytope::LatticePolytope(LatticeChart chart, std::vector<HalfSpace> inequalities) {
    auto built = build(std::move(chart), std::move(inequalities), true);
    *this = std::move(*built);
}

std::optional<LatticePolytope> LatticePolytope::try_build(LatticeChart chart,
                                                          std::vector<HalfSpace> inequalities) {
    return build(std::move(chart), std::move(inequalities), false);
}

const Facet* LatticePolytope::facet_for_inequality(int i) const {
    for (const auto& f : facets_)
        if (f.index == i) return &f;
    return nullptr;
}

Rational LatticePolytope::boundary_measure() const {
    Rational total = 0;
    for (const auto& f : facets_) total += f.sigma_volume;
    return total;
}

bool LatticePolytope::contains(const Vec& point) const {
    for (const auto& hs : inequalities_) {
        if (dot(hs.normal, point) > hs.offset) return false;
    }
    return true;
}

bool LatticePolytope::origin_interior() const {
    for (const auto& hs : inequalities_) {
        if (!(hs.offset > 0)) return false;
    }
    return true;
}

std::vector<std::pair<int, std::vector<Simplex>>> LatticePolytope::pyramid_decomposition() const {
    if (!origin_interior())
        throw std::invalid_argument("pyramid_decomposition: origin not strictly interior");
    const int r = dim();
    Vec origin = Vec::Zero(r);
    std::vector<std::pair<int, std::vector<Simplex>>> pyramids;
    for (const auto& f : facets_) {
        std::vector<Simplex> simplices;
        for (const auto& fs : f.triangulation) {
            Simplex s;
            s.vertices.push_back(origin);
            for (const auto& v : fs.vertices) s.vertices.push_back(v);
            Mat edges(r, r);
            for (int k = 0; k < r; ++k) edges.col(k) = s.vertices[k + 1];
            s.lattice_normalized_volume =
                abs_rational(determinant(edges)) / Rational(factorial(r)) * chart_.mu_factor();
            if (s.lattice_normalized_volume == 0)
                throw std::logic_error("pyramid_decomposition: degenerate pyramid simplex");
            simplices.push_back(std::move(s));
        }
        pyramids.emplace_back(f.index, std::move(simplices));
    }
    return pyramids;
}

std::vector<int> LatticePolytope::active_inequalities(int vertex_id) const {
    return vertex_active_[vertex_id];
}

int LatticePolytope::affine_dim(const std::vector<int>& ids) const {
    if (ids.empty()) return -1;
    if (ids.size() == 1) return 0;
    Mat diffs(ids.size() - 1, dim());
    for (size_t i = 1; i < ids.size(); ++i)
        diffs.row(i - 1) = (vertices_[ids[i]] - vertices_[ids[0]]).transpose();
    return rank_of(diffs);
}

std::vector<std::vector<int>> LatticePolytope::subfaces(const std::vector<int>& face_ids,
                                                        int face_dim) const {
    std::vector<std::vector<int>> children;
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < inequalities_.size(); ++i) {
        std::vector<int> sub;
        for (int id : face_ids) {
            if (dot(inequalities_[i].normal, vertices_[id]) == inequalities_[i].offset)
                sub.push_back(id);
        }
        if (sub.size() == face_ids.size()) continue;  // inequality active on the whole face
        if (affine_dim(sub) != face_dim - 1) continue;
        if (seen.insert(sub).second) children.push_back(std::move(sub));
    }
    return children;
}

std::vector<std::vector<int>> LatticePolytope::triangulate_face(const std::vector<int>& face_ids,
                                                                int face_dim) const {
    if (static_cast<int>(face_ids.size()) == face_dim + 1) return {face_ids};
    // Stellar: cone from the least vertex id (lex-least point) over the
    // triangulations of the subfaces avoiding it.
    int apex = face_ids.front();
    std::vector<std::vector<int>> out;
    for (const auto& child : subfaces(face_ids, face_dim)) {
        if (std::find(child.begin(), child.end(), apex) != child.end()) continue;
        for (auto sub : triangulate_face(child, face_dim - 1)) {
            std::vector<int> s;
            s.push_back(apex);
            s.insert(s.end(), sub.begin(), sub.end());
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<HalfSpace> simplex_halfspaces(const std::vector<Vec>& vertices) {
    const int r = static_cast<int>(vertices.size()) - 1;
    std::vector<HalfSpace> out;
    for (int drop = 0; drop <= r; ++drop) {
        // Hyperplane through all vertices except `drop`.
        Mat dirs(r - 1, r);
        int row = 0;
        int keep0 = drop == 0 ? 1 : 0;
        for (int k = 0; k <= r; ++k) {
            if (k == drop || k == keep0) continue;
            dirs.row(row++) = (vertices[k] - vertices[keep0]).transpose();
        }
        Vec n = r == 1 ? Vec::Ones(1) : kernel_vector(dirs);
        if (n.size() != r) throw std::invalid_argument("simplex_halfspaces: degenerate simplex");
        Rational rhs = 0;
        for (int i = 0; i < r; ++i) rhs += n[i] * vertices[keep0][i];
        Rational at_drop = 0;
        for (int i = 0; i < r; ++i) at_drop += n[i] * vertices[drop][i];
        if (at_drop > rhs) {
            n = -n;
            rhs = -rhs;
        } else if (at_drop == rhs) {
            throw std::invalid_argument("simplex_halfspaces: degenerate simplex");
        }
        out.push_back({n, rhs});
    }
    return out;
}

std::vector<std::pair<int, LatticePolytope>> linearity_subdivision(
    const LatticePolytope& p, const std::vector<AffinePiece>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("linearity_subdivision: no pieces");
    std::vector<std::pair<int, LatticePolytope>> regions;
    for (size_t j = 0; j < pieces.size(); ++j) {
        std::vector<HalfSpace> system = p.inequalities();
        for (size_t k = 0; k < pieces.size(); ++k) {
            if (k == j) continue;
            // piece j <= piece k on the region.
            Vec n = pieces[j].slope - pieces[k].slope;
            bool zero = true;
            for (Eigen::Index i = 0; i < n.size(); ++i)
                if (n[i] != 0) zero = false;
            if (zero) {
                if (pieces[j].constant > pieces[k].constant) {
                    system.clear();  // piece j strictly above piece k everywhere
                    break;
                }
                continue;
            }
            system.push_back({n, pieces[k].constant - pieces[j].constant});
        }
        if (system.empty()) continue;
        auto region = LatticePolytope::try_build(p.chart(), std::move(system));
        if (region) regions.emplace_back(static_cast<int>(j), std::move(*region));
    }
    return regions;
}

}  // namespace kstab
