#pragma once

#include "scatter/numerics.hpp"
#include "scatter/scattering.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scatter {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Multichannel signal file: a header row of channel names, then one row of
/// samples per time step, one column per channel.
struct SignalTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> channels;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Throws InputError with the 1-based line (and column for bad values).
SignalTable parse_signal_csv(std::string_view text);
SignalTable read_signal_csv(const std::filesystem::path& path);
std::string format_signal_csv(const SignalTable& table);

/// Rows are time, columns are bands.
std::string format_band_matrix_csv(const BandMatrix& m, std::string_view column_prefix);
/// Plain matrix with generated column names.
std::string format_matrix_csv(const Matrix& m, std::string_view column_prefix);

/// Little-endian float64 payload, time fastest, then the inner then outer
/// band index; plus a JSON sidecar describing the shape.
std::string encode_tensor_binary(const BandTensor& t);
std::string tensor_sidecar_json(const BandTensor& t, std::string_view payload_name);

std::string sha256_hex(std::string_view content);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Tracks every artifact written under a root directory together with its
/// SHA-256, for the run manifest.
class OutputTree {
public:
    explicit OutputTree(std::filesystem::path root);

    void write(const std::filesystem::path& relative, std::string_view content);
    const std::map<std::string, std::string>& hashes() const { return hashes_; }
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    std::map<std::string, std::string> hashes_;
};

}  // namespace scatter
