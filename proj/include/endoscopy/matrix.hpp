#pragma once
#include <vector>
#include <functional>
#include <string>
#include <sstream>
#include "errors.hpp"

namespace endo {

/**
 * Dense matrix over an exact scalar ring K.  K must provide value
 * semantics, ring operators, is_zero/is_unit, val(), inv(), div_exact(),
 * and the *_like context factories (zero_like/one_like/from_int_like).
 * A prototype element carries ring context (prime, precision, conductor)
 * so that empty and zero matrices still know their ring.
 */
template <class K>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(long r, long c, const K& proto)
        : r_(r), c_(c), proto_(proto.zero_like()), a_(r * c, proto.zero_like()) {}

    static Mat identity(long n, const K& proto) {
        Mat m(n, n, proto);
        for (long i = 0; i < n; ++i) m.at(i, i) = proto.one_like();
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<K>>& rows) {
        if (rows.empty()) throw DomainError("Mat::from_rows: empty");
        Mat m((long)rows.size(), (long)rows[0].size(), rows[0][0]);
        for (long i = 0; i < m.r_; ++i) {
            if ((long)rows[i].size() != m.c_) throw DomainError("Mat::from_rows: ragged rows");
            for (long j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat from_ints(const std::vector<std::vector<long>>& rows, const K& proto) {
        if (rows.empty()) return Mat(0, 0, proto);
        Mat m((long)rows.size(), (long)rows[0].size(), proto);
        for (long i = 0; i < m.r_; ++i) {
            if ((long)rows[i].size() != m.c_) throw DomainError("Mat::from_ints: ragged rows");
            for (long j = 0; j < m.c_; ++j) m.at(i, j) = proto.from_int_like(rows[i][j]);
        }
        return m;
    }

    long rows() const { return r_; }
    long cols() const { return c_; }
    const K& proto() const { return proto_; }

    K& at(long i, long j) {
        if (i < 0 || i >= r_ || j < 0 || j >= c_) throw DomainError("Mat: index out of range");
        return a_[i * c_ + j];
    }
    const K& at(long i, long j) const {
        if (i < 0 || i >= r_ || j < 0 || j >= c_) throw DomainError("Mat: index out of range");
        return a_[i * c_ + j];
    }

    bool operator==(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (long i = 0; i < r_ * c_; ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& x : a_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (r_ != c_) return false;
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) {
                if (i == j && !at(i, j).is_one()) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    Mat operator+(const Mat& o) const {
        require_shape(o.r_, o.c_);
        Mat m = *this;
        for (long i = 0; i < r_ * c_; ++i) m.a_[i] = m.a_[i] + o.a_[i];
        return m;
    }
    Mat operator-(const Mat& o) const {
        require_shape(o.r_, o.c_);
        Mat m = *this;
        for (long i = 0; i < r_ * c_; ++i) m.a_[i] = m.a_[i] - o.a_[i];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw DomainError("Mat: shape mismatch in product");
        Mat m(r_, o.c_, proto_);
        for (long i = 0; i < r_; ++i)
            for (long k = 0; k < c_; ++k) {
                const K& x = at(i, k);
                if (x.is_zero()) continue;
                for (long j = 0; j < o.c_; ++j)
                    m.at(i, j) = m.at(i, j) + x * o.at(k, j);
            }
        return m;
    }
    Mat scaled(const K& s) const {
        Mat m = *this;
        for (auto& x : m.a_) x = x * s;
        return m;
    }

    Mat transpose() const {
        Mat m(c_, r_, proto_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    std::vector<K> mul_vec(const std::vector<K>& v) const {
        if ((long)v.size() != c_) throw DomainError("Mat::mul_vec: shape mismatch");
        std::vector<K> out(r_, proto_);
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) out[i] = out[i] + at(i, j) * v[j];
        return out;
    }

    Mat submatrix(const std::vector<long>& rows, const std::vector<long>& cols) const {
        Mat m((long)rows.size(), (long)cols.size(), proto_);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
        return m;
    }
    Mat columns(const std::vector<long>& cols) const {
        std::vector<long> rs(r_);
        for (long i = 0; i < r_; ++i) rs[i] = i;
        return submatrix(rs, cols);
    }
    void assign_block(long i0, long j0, const Mat& b) {
        for (long i = 0; i < b.r_; ++i)
            for (long j = 0; j < b.c_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
    }
    static Mat hstack(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_) throw DomainError("Mat::hstack: shape mismatch");
        Mat m(a.r_, a.c_ + b.c_, a.proto_);
        m.assign_block(0, 0, a);
        m.assign_block(0, a.c_, b);
        return m;
    }
    static Mat vstack(const Mat& a, const Mat& b) {
        if (a.c_ != b.c_) throw DomainError("Mat::vstack: shape mismatch");
        Mat m(a.r_ + b.r_, a.c_, a.proto_);
        m.assign_block(0, 0, a);
        m.assign_block(a.r_, 0, b);
        return m;
    }
    static Mat block_diag(const std::vector<Mat>& blocks, const K& proto) {
        long r = 0, c = 0;
        for (auto& b : blocks) { r += b.rows(); c += b.cols(); }
        Mat m(r, c, proto);
        long i0 = 0, j0 = 0;
        for (auto& b : blocks) {
            m.assign_block(i0, j0, b);
            i0 += b.rows();
            j0 += b.cols();
        }
        return m;
    }

    template <class K2>
    Mat<K2> map(const std::function<K2(const K&)>& f) const {
        if (r_ == 0 || c_ == 0) throw DomainError("Mat::map: empty matrix needs a proto");
        Mat<K2> m(r_, c_, f(proto_));
        for (long i = 0; i < r_; ++i)
            for (long j = 0; j < c_; ++j) m.at(i, j) = f(at(i, j));
        return m;
    }

    void swap_rows(long i, long j) {
        for (long k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(long i, long j) {
        for (long k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
    }
    // row i -= f * row j
    void row_axpy(long i, long j, const K& f) {
        for (long k = 0; k < c_; ++k) at(i, k) = at(i, k) - f * at(j, k);
    }
    // col i -= f * col j
    void col_axpy(long i, long j, const K& f) {
        for (long k = 0; k < r_; ++k) at(k, i) = at(k, i) - f * at(k, j);
    }

    std::string str() const {
        std::ostringstream os;
        for (long i = 0; i < r_; ++i) {
            os << (i == 0 ? "[" : " ");
            for (long j = 0; j < c_; ++j) os << (j ? ", " : "[") << at(i, j).str();
            os << "]" << (i + 1 == r_ ? "]" : "\n");
        }
        if (r_ == 0) os << "[]";
        return os.str();
    }

private:
    long r_, c_;
    K proto_;
    std::vector<K> a_;
    void require_shape(long r, long c) const {
        if (r_ != r || c_ != c) throw DomainError("Mat: shape mismatch");
    }
};

template <class K>
K dot(const std::vector<K>& a, const std::vector<K>& b) {
    if (a.size() != b.size() || a.empty()) throw DomainError("dot: shape mismatch");
    K out = a[0].zero_like();
    for (size_t i = 0; i < a.size(); ++i) out = out + a[i] * b[i];
    return out;
}

// t(T) * H * T, the Gram matrix of H pulled back along T.
template <class K>
Mat<K> congruence(const Mat<K>& T, const Mat<K>& H) {
    return T.transpose() * H * T;
}

// ---- elimination ----

template <class K>
struct Elim {
    Mat<K> R;     // echelon form, pivot rows unscaled
    Mat<K> U;     // U * A = R, product of the row operations
    std::vector<std::pair<long, long>> pivots;
    int sign = 1;
};

/**
 * Row elimination with minimal-valuation pivoting.  Over a field every
 * nonzero entry has valuation 0; over a truncated local ring the pivot of
 * smallest valuation keeps every quotient exact.  A pivot whose valuation
 * exceeds half its known digits aborts: results past that point would
 * depend on unknown digits.
 */
template <class K>
Elim<K> eliminate(const Mat<K>& A, bool reduce_up = false) {
    Elim<K> e{A, Mat<K>::identity(A.rows(), A.proto()), {}, 1};
    long row = 0;
    for (long col = 0; col < A.cols() && row < A.rows(); ++col) {
        long best = -1;
        long best_val = 0;
        for (long i = row; i < e.R.rows(); ++i) {
            const K& x = e.R.at(i, col);
            if (x.is_zero()) continue;
            if (best < 0 || x.val() < best_val) { best = i; best_val = x.val(); }
        }
        if (best < 0) continue;
        if (2 * best_val > e.R.at(best, col).prec_hint())
            throw PrecisionError("eliminate: pivot valuation too close to precision");
        if (best != row) {
            e.R.swap_rows(best, row);
            e.U.swap_rows(best, row);
            e.sign = -e.sign;
        }
        const K pivot = e.R.at(row, col);
        for (long i = reduce_up ? 0 : row + 1; i < e.R.rows(); ++i) {
            if (i == row) continue;
            const K& x = e.R.at(i, col);
            if (x.is_zero()) continue;
            K f = x.div_exact(pivot);
            e.R.row_axpy(i, row, f);
            e.U.row_axpy(i, row, f);
        }
        e.pivots.emplace_back(row, col);
        ++row;
    }
    return e;
}

template <class K>
long rank(const Mat<K>& A) {
    return (long)eliminate(A).pivots.size();
}

template <class K>
K det(const Mat<K>& A) {
    if (A.rows() != A.cols()) throw DomainError("det: not square");
    if (A.rows() == 0) throw DomainError("det: empty");
    Elim<K> e = eliminate(A);
    if ((long)e.pivots.size() < A.rows()) return A.proto().zero_like();
    K d = e.sign >= 0 ? A.proto().one_like() : -A.proto().one_like();
    for (auto& [i, j] : e.pivots) d = d * e.R.at(i, j);
    return d;
}

// Inverse over the ring: every pivot must be a unit (GL over Zp, nonzero
// determinant over a field).
template <class K>
Mat<K> inverse(const Mat<K>& A) {
    if (A.rows() != A.cols()) throw DomainError("inverse: not square");
    Elim<K> e = eliminate(A, /*reduce_up=*/true);
    if ((long)e.pivots.size() < A.rows()) throw DomainError("inverse: singular matrix");
    Mat<K> out = e.U;
    for (auto& [i, j] : e.pivots) {
        const K& pivot = e.R.at(i, j);
        if (!pivot.is_unit()) throw DomainError("inverse: pivot is not a unit");
        K pinv = pivot.inv();
        for (long k = 0; k < out.cols(); ++k) out.at(i, k) = out.at(i, k) * pinv;
    }
    // pivots are on the diagonal after full reduction of an invertible matrix
    return out;
}

template <class K> struct SmithLocal;
template <class K> SmithLocal<K> smith_local(const Mat<K>& A);

// Solve A x = b over the ring (declared after smith_local below).
template <class K>
std::vector<K> solve(const Mat<K>& A, const std::vector<K>& b);

// Kernel basis over a field, as matrix columns.
template <class K>
Mat<K> kernel_field(const Mat<K>& A) {
    Elim<K> e = eliminate(A, /*reduce_up=*/true);
    std::vector<long> pivot_col(A.cols(), -1);
    for (auto& [i, j] : e.pivots) pivot_col[j] = i;
    std::vector<long> free_cols;
    for (long j = 0; j < A.cols(); ++j)
        if (pivot_col[j] < 0) free_cols.push_back(j);
    Mat<K> ker(A.cols(), (long)free_cols.size(), A.proto());
    for (size_t t = 0; t < free_cols.size(); ++t) {
        long fc = free_cols[t];
        ker.at(fc, (long)t) = A.proto().one_like();
        for (long j = 0; j < A.cols(); ++j) {
            long pr = pivot_col[j];
            if (pr < 0) continue;
            // x_j = -R[pr][fc] / R[pr][j]
            ker.at(j, (long)t) = -(e.R.at(pr, fc).div_exact(e.R.at(pr, j)));
        }
    }
    return ker;
}

// ---- two-sided reduction over a truncated local ring ----

template <class K>
struct SmithLocal {
    Mat<K> D;            // diagonal
    Mat<K> U, V;         // U * A * V = D, both invertible over the ring
    std::vector<long> diag_val;   // valuation of each diagonal entry
    long apparent_rank = 0;       // entries with valuation < known digits
};

/**
 * Diagonalization U A V = D over a truncated local PID by global
 * minimal-valuation pivoting.  diag_val holds min(ord pivot, digits);
 * a diagonal valuation equal to the known digits means the entry is zero
 * to working precision (kernel direction; V's column is then a saturated
 * kernel vector).
 */
template <class K>
SmithLocal<K> smith_local(const Mat<K>& A) {
    SmithLocal<K> s{A, Mat<K>::identity(A.rows(), A.proto()),
                    Mat<K>::identity(A.cols(), A.proto()), {}, 0};
    long n = std::min(A.rows(), A.cols());
    long t = 0;
    for (; t < n; ++t) {
        long bi = -1, bj = -1;
        long best_val = 0;
        for (long i = t; i < s.D.rows(); ++i)
            for (long j = t; j < s.D.cols(); ++j) {
                const K& x = s.D.at(i, j);
                if (x.is_zero()) continue;
                if (bi < 0 || x.val() < best_val) { bi = i; bj = j; best_val = x.val(); }
            }
        if (bi < 0) break;
        if (2 * best_val > s.D.at(bi, bj).prec_hint())
            throw PrecisionError("smith_local: pivot valuation too close to precision");
        if (bi != t) { s.D.swap_rows(bi, t); s.U.swap_rows(bi, t); }
        if (bj != t) { s.D.swap_cols(bj, t); s.V.swap_cols(bj, t); }
        const K pivot = s.D.at(t, t);
        for (long i = t + 1; i < s.D.rows(); ++i) {
            const K& x = s.D.at(i, t);
            if (x.is_zero()) continue;
            K f = x.div_exact(pivot);
            s.D.row_axpy(i, t, f);
            s.U.row_axpy(i, t, f);
        }
        for (long j = t + 1; j < s.D.cols(); ++j) {
            const K& x = s.D.at(t, j);
            if (x.is_zero()) continue;
            K f = x.div_exact(pivot);
            s.D.col_axpy(j, t, f);
            s.V.col_axpy(j, t, f);
        }
        s.diag_val.push_back(best_val);
        ++s.apparent_rank;
    }
    return s;
}

// Saturated kernel over a truncated local ring: the V-columns beyond the
// apparent rank.  Borderline pivots abort inside smith_local rather than
// end up misclassified, so the split rank/kernel is trustworthy.
template <class K>
Mat<K> kernel_local(const Mat<K>& A) {
    SmithLocal<K> s = smith_local(A);
    std::vector<long> cols;
    for (long j = s.apparent_rank; j < A.cols(); ++j) cols.push_back(j);
    return s.V.columns(cols);
}

template <class K>
std::vector<K> solve(const Mat<K>& A, const std::vector<K>& b) {
    if ((long)b.size() != A.rows()) throw DomainError("solve: shape mismatch");
    SmithLocal<K> s = smith_local(A);
    std::vector<K> ub(A.rows(), A.proto().zero_like());
    for (long i = 0; i < A.rows(); ++i) {
        for (long j = 0; j < A.rows(); ++j) ub[i] = ub[i] + s.U.at(i, j) * b[j];
    }
    std::vector<K> y(A.cols(), A.proto().zero_like());
    for (long t = 0; t < s.apparent_rank; ++t)
        y[t] = ub[t].div_exact(s.D.at(t, t));      // throws if not divisible
    for (long i = s.apparent_rank; i < A.rows(); ++i)
        if (!ub[i].is_zero()) throw DomainError("solve: inconsistent system");
    return s.V.mul_vec(y);
}

} // namespace endo
