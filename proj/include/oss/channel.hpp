#pragma once

#include <cstdint>
#include <vector>

#include "oss/code_spec.hpp"
#include "oss/encoder.hpp"

namespace oss {

// Counter-based pseudorandom stream. Output i of stream (seed, stream_id) is
// a pure function of (seed, stream_id, i), so any trial of any stream is
// addressable without sequential replay and distinct stream_ids never share
// state. Gaussians come from Box-Muller over two consecutive uniforms; the
// transform is fixed here, not delegated to the standard library, so results
// are bit-identical across platforms and toolchains.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Stateless access: word at an absolute counter position.
    std::uint64_t word_at(std::uint64_t counter) const;

    // Sequential convenience cursor (starts at 0).
    std::uint64_t next_u64();
    double next_unit_open();   // uniform in (0, 1]
    double next_unit_coopen(); // uniform in [0, 1)
    double next_gaussian();    // standard normal, Box-Muller pair cached

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t cursor_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct NoiseModel {
    double sigma = 0.0; // per-dimension noise standard deviation, > 0
};

// y = c + sigma * z with z drawn from the stream's Gaussian sequence.
std::vector<double> transmit(const std::vector<double>& codeword, const NoiseModel& model, RngStream& stream);

// Per-dimension sigma for a target Eb/N0: sigma^2 = Es / (2 R ebn0_linear).
double sigma_from_ebn0_db(const ValidatedSpec& spec, double ebn0_db);
double ebn0_db_from_sigma(const ValidatedSpec& spec, double sigma);

// SNR = Es / sigma^2; at a given Eb/N0, SNR = 2 R ebn0_linear.
double snr_db_from_sigma(const ValidatedSpec& spec, double sigma);
double snr_db_from_ebn0_db(const ValidatedSpec& spec, double ebn0_db);

// B uniform message bits off the stream.
Bits random_bits(int nbits, RngStream& stream);

} // namespace oss
