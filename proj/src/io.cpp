#include "scatter/io.hpp"

#include "scatter/config.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace scatter {

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), ptr);
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

SignalTable parse_signal_csv(std::string_view text)
{
    SignalTable table;
    std::size_t line_no = 0;
    bool have_header = false;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        if (!have_header) {
            for (auto f : fields) {
                if (f.empty()) throw InputError("line " + std::to_string(line_no) + ": empty channel name");
                table.names.emplace_back(f);
            }
            table.channels.resize(fields.size());
            have_header = true;
            continue;
        }
        if (fields.size() != table.names.size())
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.names.size()) +
                             " columns, found " + std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            const auto* end = fields[c].data() + fields[c].size();
            const auto [ptr, ec] = std::from_chars(fields[c].data(), end, v);
            if (ec != std::errc() || ptr != end || fields[c].empty() || !std::isfinite(v))
                throw InputError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                 ": invalid sample '" + std::string(fields[c]) + "'");
            table.channels[c].push_back(v);
        }
    }
    if (!have_header) throw InputError("signal file is empty");
    if (table.length() == 0) throw InputError("signal file has no samples");
    return table;
}

SignalTable read_signal_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_signal_csv(buffer.str());
}

std::string format_signal_csv(const SignalTable& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        if (c) out += ',';
        out += table.names[c];
    }
    out += '\n';
    for (std::size_t t = 0; t < table.length(); ++t) {
        for (std::size_t c = 0; c < table.channels.size(); ++c) {
            if (c) out += ',';
            out += format_double(table.channels[c][t]);
        }
        out += '\n';
    }
    return out;
}

std::string format_band_matrix_csv(const BandMatrix& m, std::string_view column_prefix)
{
    std::string out;
    out.reserve(m.length() * m.bands() * 12);
    for (std::size_t b = 0; b < m.bands(); ++b) {
        if (b) out += ',';
        out += column_prefix;
        out += std::to_string(b);
    }
    out += '\n';
    for (std::size_t t = 0; t < m.length(); ++t) {
        for (std::size_t b = 0; b < m.bands(); ++b) {
            if (b) out += ',';
            out += format_double(m.at(t, b));
        }
        out += '\n';
    }
    return out;
}

std::string format_matrix_csv(const Matrix& m, std::string_view column_prefix)
{
    std::string out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c) out += ',';
        out += column_prefix;
        out += std::to_string(c);
    }
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string encode_tensor_binary(const BandTensor& t)
{
    const auto values = t.values();
    std::string out(values.size() * sizeof(double), '\0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(values[i]);
        for (std::size_t b = 0; b < 8; ++b) {
            out[i * 8 + b] = static_cast<char>(bits & 0xff);
            bits >>= 8;
        }
    }
    return out;
}

std::string tensor_sidecar_json(const BandTensor& t, std::string_view payload_name)
{
    const nlohmann::ordered_json j = {
        {"payload", payload_name},
        {"dtype", "float64"},
        {"byte_order", "little"},
        {"shape", {t.outer(), t.inner(), t.length()}},
        {"axes", {"lambda1", "lambda2", "time"}},
    };
    return j.dump(2) + "\n";
}

std::string sha256_hex(std::string_view content)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(content.data(), content.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

OutputTree::OutputTree(std::filesystem::path root) : root_(std::move(root))
{
    std::filesystem::create_directories(root_);
}

void OutputTree::write(const std::filesystem::path& relative, std::string_view content)
{
    write_file_atomic(root_ / relative, content);
    hashes_[relative.generic_string()] = sha256_hex(content);
}

}  // namespace scatter
