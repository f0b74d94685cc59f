#include "mcf/gf2.hpp"

#include "mcf/errors.hpp"

namespace mcf::gf2 {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(static_cast<size_t>(rows) * words_, 0) {}

bool Matrix::get(int i, int j) const {
    return (bits_[static_cast<size_t>(i) * words_ + j / 64] >> (j % 64)) & 1u;
}

void Matrix::set(int i, int j, bool v) {
    std::uint64_t& w = bits_[static_cast<size_t>(i) * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t(1) << (j % 64);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("complex", "matrix shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            if (!get(i, k)) continue;
            for (int w = 0; w < rhs.words_; ++w)
                out.bits_[static_cast<size_t>(i) * out.words_ + w] ^=
                    rhs.bits_[static_cast<size_t>(k) * rhs.words_ + w];
        }
    }
    return out;
}

bool Matrix::is_zero() const {
    for (std::uint64_t w : bits_)
        if (w) return false;
    return true;
}

int Matrix::rank() const {
    std::vector<std::uint64_t> rows(bits_);
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        const int w = col / 64;
        const std::uint64_t mask = std::uint64_t(1) << (col % 64);
        int pivot = -1;
        for (int i = rank; i < rows_; ++i) {
            if (rows[static_cast<size_t>(i) * words_ + w] & mask) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int ww = 0; ww < words_; ++ww)
            std::swap(rows[static_cast<size_t>(rank) * words_ + ww],
                      rows[static_cast<size_t>(pivot) * words_ + ww]);
        for (int i = 0; i < rows_; ++i) {
            if (i == rank) continue;
            if (rows[static_cast<size_t>(i) * words_ + w] & mask)
                for (int ww = 0; ww < words_; ++ww)
                    rows[static_cast<size_t>(i) * words_ + ww] ^=
                        rows[static_cast<size_t>(rank) * words_ + ww];
        }
        ++rank;
    }
    return rank;
}

namespace {

int dim_at(const GradedComplex& cx, int d) {
    const auto it = cx.dims.find(d);
    return it == cx.dims.end() ? 0 : it->second;
}

} // namespace

void validate_complex(const GradedComplex& cx) {
    for (const auto& [d, n] : cx.dims)
        if (n < 0) throw ValidationError("complex", "negative generator count");
    for (const auto& [d, m] : cx.diff) {
        if (m.cols() != dim_at(cx, d) || m.rows() != dim_at(cx, d + 1))
            throw ValidationError("complex", "differential shape mismatch");
        const auto next = cx.diff.find(d + 1);
        if (next != cx.diff.end() && !next->second.multiply(m).is_zero())
            throw ValidationError("complex", "differential does not square to zero");
    }
}

std::map<int, int> cohomology_dims(const GradedComplex& cx) {
    validate_complex(cx);
    std::map<int, int> out;
    for (const auto& [d, n] : cx.dims) {
        int rank_out = 0, rank_in = 0;
        const auto o = cx.diff.find(d);
        if (o != cx.diff.end()) rank_out = o->second.rank();
        const auto i = cx.diff.find(d - 1);
        if (i != cx.diff.end()) rank_in = i->second.rank();
        out[d] = n - rank_out - rank_in;
    }
    return out;
}

} // namespace mcf::gf2
