#include "pgt/gtmat_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pgt/error.hpp"

namespace pgt {

namespace {

constexpr std::string_view kExternalKind = "external";

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string_view field_value(std::string_view token, std::string_view key, std::string_view source) {
    if (token.substr(0, key.size()) != key)
        throw ParseError(fmt::format("{}:1: malformed header: expected '{}...', got '{}'", source, key, token));
    return token.substr(key.size());
}

}  // namespace

void write_gtmat(std::ostream& out, const ContactMatrix& mc) {
    std::string kind(kExternalKind);
    std::string seed = "none";
    if (const auto& meta = mc.meta()) {
        if (meta->kind.empty() || meta->kind.find_first_of(" \t\r\n") != std::string::npos)
            throw InvalidArgument(fmt::format("design kind '{}' is not a single token", meta->kind));
        kind = meta->kind;
        if (meta->seed) seed = std::to_string(*meta->seed);
    }
    out << fmt::format("GTMAT v1 m={} n={} kind={} seed={}\n", mc.m(), mc.n(), kind, seed);
    std::string row(mc.n(), '0');
    for (std::size_t i = 0; i < mc.m(); ++i) {
        for (std::size_t j = 0; j < mc.n(); ++j) row[j] = mc.get(i, j) ? '1' : '0';
        out << row << '\n';
    }
}

ContactMatrix read_gtmat(std::istream& in, std::string_view source) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(fmt::format("{}: empty file, missing GTMAT header", source));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string_view> tokens;
    for (auto t : split(line, ' '))
        if (!t.empty()) tokens.push_back(t);
    if (tokens.size() != 6 || tokens[0] != "GTMAT" || tokens[1] != "v1")
        throw ParseError(fmt::format("{}:1: malformed header '{}'", source, line));
    std::size_t m = 0;
    std::size_t n = 0;
    if (!parse_uint(field_value(tokens[2], "m=", source), m) || m == 0)
        throw ParseError(fmt::format("{}:1: malformed header: bad row count '{}'", source, tokens[2]));
    if (!parse_uint(field_value(tokens[3], "n=", source), n) || n == 0)
        throw ParseError(fmt::format("{}:1: malformed header: bad column count '{}'", source, tokens[3]));
    const std::string kind(field_value(tokens[4], "kind=", source));
    const std::string_view seed_text = field_value(tokens[5], "seed=", source);
    if (kind.empty()) throw ParseError(fmt::format("{}:1: malformed header: empty kind", source));
    std::optional<std::uint64_t> seed;
    if (seed_text != "none") {
        std::uint64_t s = 0;
        if (!parse_uint(seed_text, s))
            throw ParseError(fmt::format("{}:1: malformed header: bad seed '{}'", source, seed_text));
        seed = s;
    }

    BitMatrix bits(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw ParseError(fmt::format("{}: truncated matrix: header says m={} but found {} rows", source, m, i));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t lineno = i + 2;
        if (line.size() != n)
            throw ParseError(fmt::format("{}:{}: ragged row: expected {} characters, got {}", source, lineno, n,
                                         line.size()));
        for (std::size_t j = 0; j < n; ++j) {
            if (line[j] == '1') bits.set(i, j);
            else if (line[j] != '0')
                throw ParseError(fmt::format("{}:{}:{}: invalid character '{}', expected 0 or 1", source, lineno,
                                             j + 1, line[j]));
        }
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line != "\r")
            throw ParseError(fmt::format("{}: trailing data after {} rows", source, m));
    }

    std::optional<DesignMeta> meta;
    if (!(kind == kExternalKind && !seed)) meta = DesignMeta{kind, seed};
    return ContactMatrix(std::move(bits), std::move(meta));
}

void save_matrix(const ContactMatrix& mc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument(fmt::format("cannot open '{}' for writing", path.string()));
    write_gtmat(out, mc);
    if (!out) throw InvalidArgument(fmt::format("write to '{}' failed", path.string()));
}

ContactMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
    return read_gtmat(in, path.string());
}

SparseSignal parse_signal(std::string_view text, std::size_t n) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
    if (text.substr(0, 5) != "supp=") throw ParseError(fmt::format("signal must start with 'supp=': '{}'", text));
    text.remove_prefix(5);
    std::vector<std::size_t> idx;
    if (!text.empty()) {
        for (auto tok : split(text, ',')) {
            std::size_t v = 0;
            if (!parse_uint(tok, v)) throw ParseError(fmt::format("signal: bad index '{}'", tok));
            idx.push_back(v);
        }
    }
    try {
        return SparseSignal::from_one_based(n, idx);
    } catch (const InvalidArgument& ex) {
        throw ParseError(fmt::format("signal: {}", ex.what()));
    }
}

std::string format_signal(const SparseSignal& x) { return fmt::format("supp={}", fmt::join(x.one_based(), ",")); }

}  // namespace pgt
