#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oss {

using BigInt = boost::multiprecision::cpp_int;

// Exact binomial coefficient. Values grow past 2^500 for m ~ 512, hence the
// arbitrary-precision result.
BigInt binomial(int m, int k);

// floor(log2(binomial(m, k))); requires binomial(m, k) >= 1.
int floor_log2_binomial(int m, int k);

// Cached Pascal triangle rows C(i, j) for 0 <= i <= m, 0 <= j <= k, used by
// the rank/unrank walks so repeated encode/decode calls do not recompute
// binomials element by element.
class BinomialTable {
public:
    BinomialTable(int m, int k);

    const BigInt& at(int i, int j) const; // C(i, j), zero when j > i
    int m() const noexcept { return m_; }
    int k() const noexcept { return k_; }

private:
    int m_;
    int k_;
    std::vector<BigInt> table_; // (m+1) x (k+1), row-major
};

// Lexicographic combinadic bijection between [0, C(m,k)) and sorted
// k-subsets of {0, ..., m-1}. unrank(0) = {0,1,...,k-1};
// unrank(C(m,k)-1) = {m-k, ..., m-1}.
std::vector<int> combination_unrank(const BigInt& rank, int m, int k);
BigInt combination_rank(const std::vector<int>& subset, int m, int k);

// Table-backed variants for hot paths. The table must satisfy
// table.m() >= m and table.k() >= k.
std::vector<int> combination_unrank(const BigInt& rank, int m, int k, const BinomialTable& table);
BigInt combination_rank(const std::vector<int>& subset, int m, int k, const BinomialTable& table);

} // namespace oss
