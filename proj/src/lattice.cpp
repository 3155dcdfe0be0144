#include "kstab/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kstab {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(text);
            return Rational(n);
        }
        Int n(text.substr(0, slash));
        Int d(text.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator in rational literal '" + text + "'");
        return Rational(n) / Rational(d);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
}

std::string format_rational(const Rational& value) {
    std::ostringstream out;
    out << numerator(value);
    if (denominator(value) != 1) out << "/" << denominator(value);
    return out.str();
}

std::string decimal_string(const Rational& value, int digits) {
    Int n = numerator(value), d = denominator(value);
    bool neg = n < 0;
    if (neg) n = -n;
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int scaled = n * scale / d;
    Int whole = scaled / scale, frac = scaled % scale;
    std::ostringstream out;
    if (neg && (whole != 0 || frac != 0)) out << "-";
    out << whole;
    if (digits > 0) {
        std::string f = frac.str();
        out << "." << std::string(digits - f.size(), '0') << f;
    }
    return out.str();
}

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

Vec ivec_to_vec(const IVec& v) {
    Vec r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

namespace {

// Extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : Int(-a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, Int(a % b), x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

HnfResult hnf(const IMat& m) {
    if (m.rows() == 0) throw std::invalid_argument("hnf: matrix must have at least one row");
    const Eigen::Index rows = m.rows(), cols = m.cols();
    IMat h = m;
    IMat u = IMat::Zero(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) u(i, i) = 1;

    Eigen::Index pivot_row = 0;
    for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
        // Clear the column below pivot_row with row gcd steps.
        for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
            if (h(r, col) == 0) continue;
            if (h(pivot_row, col) == 0) {
                h.row(pivot_row).swap(h.row(r));
                u.row(pivot_row).swap(u.row(r));
                continue;
            }
            Int x, y;
            Int a = h(pivot_row, col), b = h(r, col);
            Int g = ext_gcd(a, b, x, y);
            Int p = a / g, q = b / g;
            // [x y; -q p] is unimodular: x p + y q = 1.
            IMat new_pivot = x * h.row(pivot_row) + y * h.row(r);
            IMat new_other = -q * h.row(pivot_row) + p * h.row(r);
            h.row(pivot_row) = new_pivot;
            h.row(r) = new_other;
            IMat up = x * u.row(pivot_row) + y * u.row(r);
            IMat uo = -q * u.row(pivot_row) + p * u.row(r);
            u.row(pivot_row) = up;
            u.row(r) = uo;
        }
        if (h(pivot_row, col) == 0) continue;
        if (h(pivot_row, col) < 0) {
            h.row(pivot_row) *= -1;
            u.row(pivot_row) *= -1;
        }
        // Reduce entries above the pivot into [0, pivot).
        Int p = h(pivot_row, col);
        for (Eigen::Index r = 0; r < pivot_row; ++r) {
            Int q = h(r, col) / p;
            if (h(r, col) - q * p < 0) q -= 1;
            if (q != 0) {
                h.row(r) -= q * h.row(pivot_row);
                u.row(r) -= q * u.row(pivot_row);
            }
        }
        ++pivot_row;
    }
    return {h, u};
}

std::vector<IVec> kernel_lattice_basis(const IVec& u) {
    const Eigen::Index dim = u.size();
    bool nonzero = false;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (u[i] != 0) nonzero = true;
    if (!nonzero) throw std::invalid_argument("kernel_lattice_basis: zero vector");

    // Row-reduce the column vector u: w * u = (g, 0, ..., 0)^T for a
    // unimodular w; rows 2..dim of w are orthogonal to u and span the
    // kernel lattice.
    IMat col(dim, 1);
    for (Eigen::Index i = 0; i < dim; ++i) col(i, 0) = u[i];
    HnfResult res = hnf(col);
    std::vector<IVec> basis;
    for (Eigen::Index r = 1; r < dim; ++r) basis.push_back(res.u.row(r).transpose());
    return basis;
}

IVec primitive_part(const Vec& v) {
    const Eigen::Index dim = v.size();
    Int lcm = 1;
    bool nonzero = false;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (v[i] != 0) nonzero = true;
        lcm = boost::multiprecision::lcm(lcm, denominator(v[i]));
    }
    if (!nonzero) throw std::invalid_argument("primitive_part: zero vector");
    IVec scaled(dim);
    Int g = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        scaled[i] = numerator(v[i]) * (lcm / denominator(v[i]));
        g = boost::multiprecision::gcd(g, scaled[i]);
    }
    for (Eigen::Index i = 0; i < dim; ++i) scaled[i] /= g;
    return scaled;
}

int rank_of(const Mat& m) {
    Mat a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    int rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = row; r < rows; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        a.row(pivot).swap(a.row(row));
        for (Eigen::Index r = row + 1; r < rows; ++r) {
            if (a(r, col) != 0) {
                Rational f = a(r, col) / a(row, col);
                a.row(r) -= f * a.row(row);
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

bool solve_linear(const Mat& a_in, const Vec& b_in, Vec& x) {
    Mat a = a_in;
    Vec b = b_in;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("solve_linear: matrix must be square");
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        a.row(pivot).swap(a.row(col));
        std::swap(b[pivot], b[col]);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (a(r, col) != 0) {
                Rational f = a(r, col) / a(col, col);
                a.row(r) -= f * a.row(col);
                b[r] -= f * b[col];
            }
        }
    }
    x = Vec::Zero(n);
    for (Eigen::Index r = n - 1; r >= 0; --r) {
        Rational s = b[r];
        for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
        x[r] = s / a(r, r);
    }
    return true;
}

Vec kernel_vector(const Mat& m) {
    Mat a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivot_col;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = row; r < rows; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        a.row(pivot).swap(a.row(row));
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r != row && a(r, col) != 0) {
                Rational f = a(r, col) / a(row, col);
                a.row(r) -= f * a.row(row);
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    // First free column yields a kernel vector.
    for (Eigen::Index col = 0; col < cols; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        Vec x = Vec::Zero(cols);
        x[col] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) {
            // Row i has its pivot at pivot_col[i].
            x[pivot_col[i]] = -a(static_cast<Eigen::Index>(i), col) / a(static_cast<Eigen::Index>(i), pivot_col[i]);
        }
        return x;
    }
    return Vec();
}

std::optional<Vec> solve_consistent(const Mat& a_in, const Vec& b_in) {
    Mat a = a_in;
    Vec b = b_in;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    std::vector<Eigen::Index> pivot_col;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = row; r < rows; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        a.row(pivot).swap(a.row(row));
        std::swap(b[pivot], b[row]);
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r != row && a(r, col) != 0) {
                Rational f = a(r, col) / a(row, col);
                a.row(r) -= f * a.row(row);
                b[r] -= f * b[row];
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (Eigen::Index r = row; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    Vec x = Vec::Zero(cols);
    for (size_t i = 0; i < pivot_col.size(); ++i) {
        Eigen::Index ri = static_cast<Eigen::Index>(i);
        x[pivot_col[i]] = b[ri] / a(ri, pivot_col[i]);
    }
    return x;
}

Rational determinant(const Mat& m_in) {
    Mat a = m_in;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("determinant: matrix must be square");
    if (n == 0) return Rational(1);
    Rational det = 1;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            det = -det;
        }
        det *= a(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (a(r, col) != 0) {
                Rational f = a(r, col) / a(col, col);
                a.row(r) -= f * a.row(col);
            }
        }
    }
    return det;
}

}  // namespace kstab
