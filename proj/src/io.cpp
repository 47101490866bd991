#include "g46/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace g46 {

namespace {

template <class T>
T parse_number(std::string_view text, const char* what) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw FormatError(std::string("bad ") + what + ": '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        out.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format_cache_line(const Expansion& e) {
    std::string line = std::to_string(e.weight()) + ";";
    bool first = true;
    for (int b : e.bs()) {
        if (!first) line += ',';
        first = false;
        line += std::to_string(b) + ":" + to_string(e.at(b));
    }
    return line;
}

Expansion parse_cache_line(std::string_view line) {
    const auto semi = line.find(';');
    if (semi == std::string_view::npos) throw FormatError("cache line without ';'");
    const int k = parse_number<int>(line.substr(0, semi), "weight");
    if (k < 4 || k % 2 != 0) throw FormatError("cache weight must be even and >= 4");
    Expansion e(k, Provenance::loaded);
    const auto expected = e.bs();
    const auto items = split(line.substr(semi + 1), ',');
    if (items.size() != expected.size())
        throw FormatError("weight " + std::to_string(k) + ": expected " + std::to_string(expected.size()) + " terms");
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto colon = items[i].find(':');
        if (colon == std::string_view::npos) throw FormatError("cache term without ':'");
        const int b = parse_number<int>(items[i].substr(0, colon), "G_6 exponent");
        if (b != expected[i]) throw FormatError("weight " + std::to_string(k) + ": terms out of order or inadmissible");
        try {
            e.at(b) = parse_rat(items[i].substr(colon + 1), true);
        } catch (const std::invalid_argument& ex) {
            throw FormatError(ex.what());
        }
    }
    return e;
}

void write_cache(std::ostream& os, const std::vector<ExpansionEngine::Ptr>& expansions) {
    os << kCacheHeader << '\n';
    for (const auto& e : expansions) os << format_cache_line(*e) << '\n';
}

std::vector<Expansion> read_cache(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCacheHeader) throw FormatError("missing G46CACHE v1 header");
    std::vector<Expansion> out;
    int last = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Expansion e = parse_cache_line(line);
        if (e.weight() <= last) throw FormatError("cache weights must be strictly ascending");
        last = e.weight();
        out.push_back(std::move(e));
    }
    return out;
}

void save_cache_file(const std::filesystem::path& path, const std::vector<ExpansionEngine::Ptr>& expansions) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        write_cache(os, expansions);
        if (!os.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<Expansion> load_cache_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return {};
    return read_cache(is);
}

void write_faberpoly(std::ostream& os, const FaberPolynomial& p) {
    os << kPolyHeader << " d=" << p.degree() << '\n';
    for (std::size_t r = 0; r < p.coeffs.size(); ++r) os << r << ' ' << to_string(p.coeffs[r]) << '\n';
}

FaberPolynomial read_faberpoly(std::istream& is) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            const auto t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line()) throw FormatError("empty polynomial file");
    const auto header = trim(line);
    const std::string prefix = std::string(kPolyHeader) + " d=";
    if (header.substr(0, prefix.size()) != prefix) throw FormatError("missing FABERPOLY v1 header");
    const int d = parse_number<int>(header.substr(prefix.size()), "degree");
    if (d < 0) throw FormatError("negative degree");

    FaberPolynomial p;
    p.source = "file";
    for (int r = 0; r <= d; ++r) {
        if (!next_line()) throw FormatError("expected " + std::to_string(d + 1) + " coefficient lines");
        const auto t = trim(line);
        const auto space = t.find(' ');
        if (space == std::string_view::npos) throw FormatError("coefficient line needs 'r num/den'");
        if (parse_number<int>(t.substr(0, space), "index") != r) throw FormatError("coefficient indices must run 0..d");
        try {
            p.coeffs.push_back(parse_rat(trim(t.substr(space + 1))));
        } catch (const std::invalid_argument& ex) {
            throw FormatError(ex.what());
        }
    }
    if (next_line()) throw FormatError("trailing data after coefficient d");
    p.monic_normalized = p.is_monic();
    return p;
}

ComboSpec parse_combo_spec(std::istream& is) {
    ComboSpec spec;
    bool seen_D = false, seen_l = false, seen_a = false, seen_m = false;
    std::string line;
    while (std::getline(is, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw FormatError("combo line without '=': '" + std::string(t) + "'");
        const auto key = trim(t.substr(0, eq));
        const auto value = trim(t.substr(eq + 1));
        if (key == "D") {
            spec.D = parse_number<long>(value, "D");
            seen_D = true;
        } else if (key == "l") {
            spec.ell = parse_number<int>(value, "l");
            seen_l = true;
        } else if (key == "a") {
            spec.a.clear();
            for (auto item : split(value, ',')) spec.a.push_back(parse_number<int>(trim(item), "exponent"));
            seen_a = true;
        } else if (key == "m") {
            spec.m.clear();
            for (auto item : split(value, ',')) spec.m.push_back(parse_number<long>(trim(item), "multiplier"));
            seen_m = true;
        } else {
            throw FormatError("unknown combo key '" + std::string(key) + "'");
        }
    }
    if (!(seen_D && seen_l && seen_a && seen_m)) throw FormatError("combo file needs D=, l=, a= and m=");
    try {
        validate_structure(spec);
    } catch (const std::invalid_argument& ex) {
        throw FormatError(ex.what());
    }
    return spec;
}

}  // namespace g46
