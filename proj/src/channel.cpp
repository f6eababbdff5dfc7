#include "oss/channel.hpp"

#include <cmath>
#include <numbers>

#include "oss/errors.hpp"

namespace oss {

namespace {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace

std::uint64_t RngStream::word_at(std::uint64_t counter) const {
    // Two chained finalizer rounds keyed by seed and stream id; behaves as a
    // PRF of (seed, stream_id, counter), which is the whole contract.
    std::uint64_t h = mix64(seed_ + kGolden);
    h = mix64(h ^ (stream_id_ + 0x6a09e667f3bcc909ULL));
    return mix64(h ^ (counter * kGolden + 0xe07db2a8d3c41d7dULL));
}

std::uint64_t RngStream::next_u64() { return word_at(cursor_++); }

double RngStream::next_unit_open() {
    // 53-bit mantissa shifted into (0, 1]; never 0 so log() is safe.
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_unit_coopen() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit_open();
    const double u2 = next_unit_coopen();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::vector<double> transmit(const std::vector<double>& codeword, const NoiseModel& model, RngStream& stream) {
    if (!(model.sigma > 0.0)) fail(ErrorCode::InvalidArgument, "noise sigma must be positive");
    std::vector<double> y(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i)
        y[i] = codeword[i] + model.sigma * stream.next_gaussian();
    return y;
}

double sigma_from_ebn0_db(const ValidatedSpec& spec, double ebn0_db) {
    const double rate = code_rate(spec);
    if (rate <= 0.0) fail(ErrorCode::InvalidArgument, "rate is zero, Eb undefined");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(average_symbol_energy(spec) / (2.0 * rate * ebn0));
}

double ebn0_db_from_sigma(const ValidatedSpec& spec, double sigma) {
    const double rate = code_rate(spec);
    if (rate <= 0.0) fail(ErrorCode::InvalidArgument, "rate is zero, Eb undefined");
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");
    const double ebn0 = average_symbol_energy(spec) / (2.0 * rate * sigma * sigma);
    return 10.0 * std::log10(ebn0);
}

double snr_db_from_sigma(const ValidatedSpec& spec, double sigma) {
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be positive");
    return 10.0 * std::log10(average_symbol_energy(spec) / (sigma * sigma));
}

double snr_db_from_ebn0_db(const ValidatedSpec& spec, double ebn0_db) {
    const double rate = code_rate(spec);
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return 10.0 * std::log10(2.0 * rate * ebn0);
}

Bits random_bits(int nbits, RngStream& stream) {
    if (nbits < 0) fail(ErrorCode::InvalidArgument, "bit count must be nonnegative");
    Bits bits(static_cast<std::size_t>(nbits));
    std::uint64_t word = 0;
    int held = 0;
    for (int i = 0; i < nbits; ++i) {
        if (held == 0) {
            word = stream.next_u64();
            held = 64;
        }
        bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --held;
    }
    return bits;
}

} // namespace oss
