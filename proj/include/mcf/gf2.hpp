#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace mcf::gf2 {

// Dense matrix over GF(2), rows packed into 64-bit words.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int i, int j) const;
    void set(int i, int j, bool v);

    Matrix multiply(const Matrix& rhs) const;
    bool is_zero() const;
    int rank() const;

private:
    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Cochain complex over GF(2): generator counts by degree, with degree +1
// differentials diff[d]: C^d -> C^{d+1} stored as (dims[d+1] x dims[d]).
struct GradedComplex {
    std::map<int, int> dims;
    std::map<int, Matrix> diff;
};

// Shape consistency and d(d(x)) = 0; throws ValidationError on violation.
void validate_complex(const GradedComplex& cx);

// dim ker(outgoing) - rank(incoming) in every degree carrying generators.
std::map<int, int> cohomology_dims(const GradedComplex& cx);

} // namespace mcf::gf2
