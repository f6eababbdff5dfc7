#include "oss/combinadics.hpp"

#include <algorithm>

#include "oss/errors.hpp"

namespace oss {

BigInt binomial(int m, int k) {
    if (m < 0 || k < 0) fail(ErrorCode::InvalidArgument, "binomial arguments must be nonnegative");
    if (k > m) return 0;
    k = std::min(k, m - k);
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= (m - k + i);
        result /= i; // exact: result is C(m-k+i, i) after this step
    }
    return result;
}

int floor_log2_binomial(int m, int k) {
    BigInt c = binomial(m, k);
    if (c <= 0) fail(ErrorCode::InvalidArgument, "binomial(m, k) is zero, no bit budget");
    return static_cast<int>(boost::multiprecision::msb(c));
}

BinomialTable::BinomialTable(int m, int k) : m_(m), k_(k) {
    if (m < 0 || k < 0) fail(ErrorCode::InvalidArgument, "BinomialTable bounds must be nonnegative");
    table_.assign(static_cast<std::size_t>(m + 1) * (k + 1), BigInt(0));
    for (int i = 0; i <= m; ++i) {
        table_[static_cast<std::size_t>(i) * (k + 1)] = 1;
        for (int j = 1; j <= std::min(i, k); ++j) {
            const std::size_t row = static_cast<std::size_t>(i) * (k + 1);
            const std::size_t prev = static_cast<std::size_t>(i - 1) * (k + 1);
            table_[row + j] = table_[prev + j - 1] + table_[prev + j];
        }
    }
}

const BigInt& BinomialTable::at(int i, int j) const {
    static const BigInt zero(0);
    if (j > i) return zero;
    return table_[static_cast<std::size_t>(i) * (k_ + 1) + j];
}

namespace {

void check_unrank_args(const BigInt& rank, int m, int k) {
    if (k < 0 || m < 0 || k > m) fail(ErrorCode::InvalidArgument, "need 0 <= k <= m");
    if (rank < 0) fail(ErrorCode::RankOutOfRange, "rank is negative");
}

std::vector<int> unrank_impl(BigInt rank, int m, int k, const BinomialTable& table) {
    check_unrank_args(rank, m, k);
    if (rank >= table.at(m, k)) fail(ErrorCode::RankOutOfRange, "rank >= C(m, k)");
    std::vector<int> subset;
    subset.reserve(k);
    int x = 0;
    for (int i = 0; i < k; ++i) {
        // Subsets starting with element x number C(m - x - 1, k - i - 1).
        while (true) {
            const BigInt& with_x = table.at(m - x - 1, k - i - 1);
            if (rank < with_x) {
                subset.push_back(x);
                ++x;
                break;
            }
            rank -= with_x;
            ++x;
        }
    }
    return subset;
}

BigInt rank_impl(const std::vector<int>& subset, int m, int k, const BinomialTable& table) {
    if (static_cast<int>(subset.size()) != k)
        fail(ErrorCode::InvalidSubset, "subset size does not match k");
    int prev = -1;
    for (int v : subset) {
        if (v <= prev || v >= m) fail(ErrorCode::InvalidSubset, "subset must be strictly increasing within [0, m)");
        prev = v;
    }
    BigInt rank = 0;
    int x = 0;
    for (int i = 0; i < k; ++i) {
        for (; x < subset[i]; ++x) rank += table.at(m - x - 1, k - i - 1);
        ++x;
    }
    return rank;
}

} // namespace

std::vector<int> combination_unrank(const BigInt& rank, int m, int k, const BinomialTable& table) {
    if (table.m() < m || table.k() < k) fail(ErrorCode::InvalidArgument, "binomial table too small");
    return unrank_impl(rank, m, k, table);
}

BigInt combination_rank(const std::vector<int>& subset, int m, int k, const BinomialTable& table) {
    if (table.m() < m || table.k() < k) fail(ErrorCode::InvalidArgument, "binomial table too small");
    return rank_impl(subset, m, k, table);
}

std::vector<int> combination_unrank(const BigInt& rank, int m, int k) {
    check_unrank_args(rank, m, k);
    BinomialTable table(m, k);
    return unrank_impl(rank, m, k, table);
}

BigInt combination_rank(const std::vector<int>& subset, int m, int k) {
    if (k < 0 || m < 0 || k > m) fail(ErrorCode::InvalidArgument, "need 0 <= k <= m");
    BinomialTable table(m, k);
    return rank_impl(subset, m, k, table);
}

} // namespace oss
