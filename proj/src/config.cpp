#include "slitsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "slitsim/csv.hpp"

namespace slitsim {

namespace {

std::string with_line(int line, const std::string& message) {
    if (line > 0) return "line " + std::to_string(line) + ": " + message;
    return message;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(with_line(line, message)), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// leading double; returns chars consumed or 0 (from_chars itself refuses a
// leading '+', so strip one first)
std::size_t scan_double(std::string_view s, double& out) {
    std::size_t skip = 0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
        skip = 1;
    }
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc()) return 0;
    return skip + static_cast<std::size_t>(res.ptr - begin);
}

double parse_with_units(std::string_view text, int line,
                        const std::vector<std::pair<std::string_view, double>>& units,
                        const char* what) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const std::size_t used = scan_double(t, value);
    if (used == 0) throw ConfigError(line, std::string("malformed ") + what + " '" + std::string(t) + "'");
    const std::string_view suffix = trim(t.substr(used));
    for (const auto& [name, factor] : units)
        if (suffix == name) return value * factor;
    throw ConfigError(line, std::string(what) + " '" + std::string(t) +
                                "' needs a unit suffix");
}

const std::vector<std::pair<std::string_view, double>> kLengthUnits = {
    {"pm", 1e-12}, {"nm", 1e-9}, {"um", 1e-6}, {"\xc2\xb5m", 1e-6},
    {"mm", 1e-3},  {"cm", 1e-2}, {"m", 1.0},
};

const std::vector<std::pair<std::string_view, double>> kAngleUnits = {
    {"mrad", 1e-3}, {"rad", 1.0}, {"deg", kPi / 180.0},
};

double parse_length_impl(std::string_view text, int line) {
    return parse_with_units(text, line, kLengthUnits, "length");
}

double parse_angle_impl(std::string_view text, int line) {
    return parse_with_units(text, line, kAngleUnits, "angle");
}

double parse_number_impl(std::string_view text, int line) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const std::size_t used = scan_double(t, value);
    if (used == 0 || !trim(t.substr(used)).empty())
        throw ConfigError(line, "malformed number '" + std::string(t) + "'");
    return value;
}

int parse_int_impl(std::string_view text, int line) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(line, "malformed integer '" + std::string(t) + "'");
    return value;
}

Complex parse_complex_impl(std::string_view text, int line) {
    const std::string_view t = trim(text);
    if (t.empty()) throw ConfigError(line, "empty complex literal");

    // split into real and imaginary parts at a +/- that is not an exponent sign
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E')
            split = i;  // keep the last candidate: "1e-3-2i" splits before "2i"
    }

    auto part = [&](std::string_view s, bool expect_imag) -> double {
        s = trim(s);
        bool imag = false;
        if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
            imag = true;
            s.remove_suffix(1);
            s = trim(s);
            if (s.empty() || s == "+") return 1.0;
            if (s == "-") return -1.0;
        }
        if (imag != expect_imag)
            throw ConfigError(line, "malformed complex literal '" + std::string(t) + "'");
        double v = 0.0;
        const std::size_t used = scan_double(s, v);
        if (used == 0 || !trim(s.substr(used)).empty())
            throw ConfigError(line, "malformed complex literal '" + std::string(t) + "'");
        return v;
    };

    if (split == std::string_view::npos) {
        if (t.back() == 'i' || t.back() == 'j') return Complex(0.0, part(t, true));
        return Complex(part(t, false), 0.0);
    }
    return Complex(part(t.substr(0, split), false), part(t.substr(split), true));
}

std::vector<std::string> parse_list(std::string_view text, int line) {
    const std::string_view t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ConfigError(line, "expected a bracketed list, got '" + std::string(t) + "'");
    const std::string_view body = t.substr(1, t.size() - 2);
    std::vector<std::string> items;
    std::size_t start = 0;
    if (trim(body).empty()) return items;
    while (true) {
        const std::size_t comma = body.find(',', start);
        const std::string_view item =
            comma == std::string_view::npos ? body.substr(start) : body.substr(start, comma - start);
        items.emplace_back(trim(item));
        if (items.back().empty()) throw ConfigError(line, "empty list entry");
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return items;
}

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
    bool consumed = false;
};

class Extractor {
  public:
    explicit Extractor(std::vector<Entry>& entries) : entries_(entries) {}

    Entry* take(const std::string& section, const std::string& key) {
        Entry* found = nullptr;
        for (Entry& e : entries_) {
            if (e.section == section && e.key == key) {
                if (found)
                    throw ConfigError(e.line, "duplicate key '" + key + "' in section [" + section + "]");
                found = &e;
            }
        }
        if (found) found->consumed = true;
        return found;
    }

  private:
    std::vector<Entry>& entries_;
};

Mask parse_mask_token(const std::string& token, int line, int slit_count) {
    if (token.empty()) throw ConfigError(line, "empty mask token");
    std::vector<int> idx;
    for (char c : token) {
        if (c < 'A' || c > 'Z') throw ConfigError(line, "mask token '" + token + "' must use letters A..Z");
        const int j = c - 'A';
        if (j >= slit_count)
            throw ConfigError(line, "mask token '" + token + "' references a slit beyond slit_count");
        idx.push_back(j);
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw ConfigError(line, "mask token '" + token + "' repeats a slit");
    Mask m;
    m.open = std::move(idx);
    return m;
}

const std::map<std::string, SweepKind, std::less<>> kSweepKinds = {
    {"intensity_map", SweepKind::intensity_map},
    {"kappa_map", SweepKind::kappa_map},
    {"kappa_at_center", SweepKind::kappa_at_center},
};

constexpr const char* kKnownSections[] = {"geometry", "illumination", "coupling",
                                          "grid",     "pattern",      "rs",
                                          "sweep",    "output"};

}  // namespace

double parse_length_m(std::string_view text) { return parse_length_impl(text, 0); }
double parse_angle_rad(std::string_view text) { return parse_angle_impl(text, 0); }
Complex parse_complex(std::string_view text) { return parse_complex_impl(text, 0); }

CouplingModel CouplingTable::at(double wavelength_m, int max_hops) const {
    CouplingModel c;
    c.max_hops = max_hops;
    const std::size_t n = wavelengths_m.size();
    if (wavelength_m <= wavelengths_m.front()) {
        c.n_eff = n_eff.front();
        c.hop_amplitudes = hop_amplitudes.front();
        return c;
    }
    if (wavelength_m >= wavelengths_m.back()) {
        c.n_eff = n_eff.back();
        c.hop_amplitudes = hop_amplitudes.back();
        return c;
    }
    std::size_t hi = 1;
    while (hi < n && wavelengths_m[hi] < wavelength_m) ++hi;
    const std::size_t lo = hi - 1;
    const double t = (wavelength_m - wavelengths_m[lo]) / (wavelengths_m[hi] - wavelengths_m[lo]);
    c.n_eff = n_eff[lo] + t * (n_eff[hi] - n_eff[lo]);
    c.hop_amplitudes.resize(hop_amplitudes[lo].size());
    for (std::size_t m = 0; m < c.hop_amplitudes.size(); ++m)
        c.hop_amplitudes[m] =
            hop_amplitudes[lo][m] + t * (hop_amplitudes[hi][m] - hop_amplitudes[lo][m]);
    return c;
}

std::vector<double> SweepConfig::wavelength_axis() const {
    std::vector<double> axis(static_cast<std::size_t>(lambda_points));
    if (lambda_points == 1) {
        axis[0] = lambda_min_m;
        return axis;
    }
    const double step = (lambda_max_m - lambda_min_m) / (lambda_points - 1);
    for (int i = 0; i < lambda_points; ++i) axis[static_cast<std::size_t>(i)] = lambda_min_m + step * i;
    axis.back() = lambda_max_m;
    return axis;
}

std::vector<double> SweepConfig::width_axis() const {
    if (!width_points) return {};
    std::vector<double> axis(static_cast<std::size_t>(*width_points));
    if (*width_points == 1) {
        axis[0] = *width_min_m;
        return axis;
    }
    const double step = (*width_max_m - *width_min_m) / (*width_points - 1);
    for (int i = 0; i < *width_points; ++i) axis[static_cast<std::size_t>(i)] = *width_min_m + step * i;
    axis.back() = *width_max_m;
    return axis;
}

ModelBundle ScenarioConfig::to_bundle() const {
    Illumination illum;
    illum.wavelength_m = wavelength_m;
    illum.slit_amplitudes = slit_amplitudes.empty()
                                ? Illumination::plane_wave(wavelength_m, slit_count).slit_amplitudes
                                : slit_amplitudes;
    CouplingModel coupling;
    coupling.n_eff = n_eff;
    coupling.hop_amplitudes = hop_amplitudes;
    coupling.max_hops = max_hops;
    return validate_config(SlitArray::make(slit_width_m, pitch_m, slit_count), std::move(illum),
                           std::move(coupling),
                           DetectorGrid::uniform(theta_min_rad, theta_max_rad, grid_points));
}

std::vector<Mask> ScenarioConfig::pattern_masks() const {
    if (!masks.empty()) return masks;
    return {Mask::all(slit_count)};
}

CouplingResolver ScenarioConfig::resolver() const {
    if (coupling_table) {
        const CouplingTable table = *coupling_table;
        const int hops = max_hops;
        return [table, hops](double wavelength) { return table.at(wavelength, hops); };
    }
    return {};
}

ScenarioConfig parse_config(const std::string& text) {
    std::vector<Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line;
            std::string_view s{raw};
            if (const std::size_t hash = s.find('#'); hash != std::string_view::npos)
                s = s.substr(0, hash);
            s = trim(s);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') throw ConfigError(line, "unterminated section header");
                section = std::string(trim(s.substr(1, s.size() - 2)));
                if (section.empty()) throw ConfigError(line, "empty section name");
                continue;
            }
            const std::size_t eq = s.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(line, "expected 'key = value'");
            if (section.empty()) throw ConfigError(line, "key outside any section");
            Entry e;
            e.section = section;
            e.key = std::string(trim(s.substr(0, eq)));
            e.value = std::string(trim(s.substr(eq + 1)));
            e.line = line;
            if (e.key.empty()) throw ConfigError(line, "empty key");
            if (e.value.empty()) throw ConfigError(line, "empty value for key '" + e.key + "'");
            entries.push_back(std::move(e));
        }
    }

    Extractor ex(entries);
    ScenarioConfig cfg;
    std::vector<std::string> missing;

    auto required = [&](const char* section, const char* key) -> Entry* {
        Entry* e = ex.take(section, key);
        if (!e) missing.push_back(std::string(section) + "." + key);
        return e;
    };

    // [geometry]
    if (Entry* e = required("geometry", "slit_width")) cfg.slit_width_m = parse_length_impl(e->value, e->line);
    if (Entry* e = required("geometry", "pitch")) cfg.pitch_m = parse_length_impl(e->value, e->line);
    if (Entry* e = required("geometry", "slit_count")) cfg.slit_count = parse_int_impl(e->value, e->line);
    if (Entry* e = ex.take("geometry", "slit_height")) cfg.slit_height_m = parse_length_impl(e->value, e->line);
    if (Entry* e = ex.take("geometry", "film_thickness"))
        cfg.film_thickness_m = parse_length_impl(e->value, e->line);

    // [illumination]
    if (Entry* e = required("illumination", "wavelength")) cfg.wavelength_m = parse_length_impl(e->value, e->line);
    if (Entry* e = ex.take("illumination", "amplitudes")) {
        for (const std::string& item : parse_list(e->value, e->line))
            cfg.slit_amplitudes.push_back(parse_complex_impl(item, e->line));
    }

    // [coupling]
    if (Entry* e = required("coupling", "n_eff")) cfg.n_eff = parse_number_impl(e->value, e->line);
    if (Entry* e = required("coupling", "hop_amplitudes")) {
        for (const std::string& item : parse_list(e->value, e->line))
            cfg.hop_amplitudes.push_back(parse_number_impl(item, e->line));
    }
    if (Entry* e = required("coupling", "max_hops")) cfg.max_hops = parse_int_impl(e->value, e->line);

    // optional per-wavelength table: table_wavelengths, table_n_eff, table_c1..
    if (Entry* e = ex.take("coupling", "table_wavelengths")) {
        CouplingTable table;
        for (const std::string& item : parse_list(e->value, e->line))
            table.wavelengths_m.push_back(parse_length_impl(item, e->line));
        if (table.wavelengths_m.empty()) throw ConfigError(e->line, "table_wavelengths must be non-empty");
        for (std::size_t i = 1; i < table.wavelengths_m.size(); ++i)
            if (!(table.wavelengths_m[i] > table.wavelengths_m[i - 1]))
                throw ConfigError(e->line, "table_wavelengths must be strictly increasing");
        Entry* en = ex.take("coupling", "table_n_eff");
        if (!en) throw ConfigError(e->line, "table_wavelengths requires table_n_eff");
        for (const std::string& item : parse_list(en->value, en->line))
            table.n_eff.push_back(parse_number_impl(item, en->line));
        if (table.n_eff.size() != table.wavelengths_m.size())
            throw ConfigError(en->line, "table_n_eff length must match table_wavelengths");
        table.hop_amplitudes.assign(table.wavelengths_m.size(), {});
        for (int m = 1;; ++m) {
            Entry* ec = ex.take("coupling", "table_c" + std::to_string(m));
            if (!ec) break;
            std::vector<double> column;
            for (const std::string& item : parse_list(ec->value, ec->line))
                column.push_back(parse_number_impl(item, ec->line));
            if (column.size() != table.wavelengths_m.size())
                throw ConfigError(ec->line, "table_c" + std::to_string(m) +
                                                " length must match table_wavelengths");
            for (std::size_t row = 0; row < column.size(); ++row)
                table.hop_amplitudes[row].push_back(column[row]);
        }
        if (table.hop_amplitudes.front().empty())
            throw ConfigError(e->line, "table_wavelengths requires table_c1, table_c2, ...");
        cfg.coupling_table = std::move(table);
    }

    // [grid]
    if (Entry* e = required("grid", "theta_min")) cfg.theta_min_rad = parse_angle_impl(e->value, e->line);
    if (Entry* e = required("grid", "theta_max")) cfg.theta_max_rad = parse_angle_impl(e->value, e->line);
    if (Entry* e = required("grid", "points")) cfg.grid_points = parse_int_impl(e->value, e->line);

    // [pattern]
    Entry* masks_entry = ex.take("pattern", "masks");

    // [rs]
    if (Entry* e = ex.take("rs", "samples_per_slit")) cfg.rs.samples_per_slit = parse_int_impl(e->value, e->line);
    if (Entry* e = ex.take("rs", "screen_distance"))
        cfg.rs.screen_distance_m = parse_length_impl(e->value, e->line);

    // [sweep]
    if (Entry* e = ex.take("sweep", "kind")) {
        SweepConfig sw;
        const auto it = kSweepKinds.find(e->value);
        if (it == kSweepKinds.end())
            throw ConfigError(e->line, "unknown sweep kind '" + e->value + "'");
        sw.kind = it->second;
        Entry* lmin = ex.take("sweep", "lambda_min");
        Entry* lmax = ex.take("sweep", "lambda_max");
        Entry* lpts = ex.take("sweep", "lambda_points");
        if (!lmin || !lmax || !lpts)
            throw ConfigError(e->line, "sweep requires lambda_min, lambda_max and lambda_points");
        sw.lambda_min_m = parse_length_impl(lmin->value, lmin->line);
        sw.lambda_max_m = parse_length_impl(lmax->value, lmax->line);
        sw.lambda_points = parse_int_impl(lpts->value, lpts->line);
        if (sw.lambda_points < 1) throw ConfigError(lpts->line, "lambda_points must be at least 1");
        if (sw.lambda_points == 1 && sw.lambda_min_m != sw.lambda_max_m)
            throw ConfigError(lpts->line, "a single-point axis requires lambda_min == lambda_max");
        if (sw.lambda_points > 1 && !(sw.lambda_min_m < sw.lambda_max_m))
            throw ConfigError(lmin->line, "lambda_min must be below lambda_max");
        Entry* wmin = ex.take("sweep", "width_min");
        Entry* wmax = ex.take("sweep", "width_max");
        Entry* wpts = ex.take("sweep", "width_points");
        if (wmin || wmax || wpts) {
            if (!wmin || !wmax || !wpts)
                throw ConfigError(e->line, "width axis requires width_min, width_max and width_points");
            sw.width_min_m = parse_length_impl(wmin->value, wmin->line);
            sw.width_max_m = parse_length_impl(wmax->value, wmax->line);
            sw.width_points = parse_int_impl(wpts->value, wpts->line);
            if (*sw.width_points < 1) throw ConfigError(wpts->line, "width_points must be at least 1");
            if (*sw.width_points == 1 && *sw.width_min_m != *sw.width_max_m)
                throw ConfigError(wpts->line, "a single-point axis requires width_min == width_max");
            if (*sw.width_points > 1 && !(*sw.width_min_m < *sw.width_max_m))
                throw ConfigError(wmin->line, "width_min must be below width_max");
        }
        cfg.sweep = std::move(sw);
    } else {
        // stray sweep keys without a kind
        for (const char* key : {"lambda_min", "lambda_max", "lambda_points", "width_min",
                                "width_max", "width_points"}) {
            if (Entry* stray = ex.take("sweep", key))
                throw ConfigError(stray->line, "sweep keys require [sweep] kind");
        }
    }

    // [output]
    if (Entry* e = ex.take("output", "prefix")) cfg.output_prefix = e->value;

    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        std::string list;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            if (i) list += ", ";
            list += missing[i];
        }
        throw ConfigError(0, "missing required keys: " + list);
    }

    // strictness: everything present must have been consumed
    for (const Entry& e : entries) {
        if (e.consumed) continue;
        const bool known_section =
            std::any_of(std::begin(kKnownSections), std::end(kKnownSections),
                        [&](const char* s) { return e.section == s; });
        if (!known_section) throw ConfigError(e.line, "unknown section [" + e.section + "]");
        throw ConfigError(e.line, "unknown key '" + e.key + "' in section [" + e.section + "]");
    }

    // masks need slit_count, so they are resolved last
    if (masks_entry) {
        for (const std::string& token : parse_list(masks_entry->value, masks_entry->line))
            cfg.masks.push_back(parse_mask_token(token, masks_entry->line, cfg.slit_count));
    }

    // surface model-invariant violations (negative width, bad grid, ...) now
    try {
        (void)cfg.to_bundle();
    } catch (const ValidationError& err) {
        throw ConfigError(0, err.what());
    }
    return cfg;
}

namespace {

std::string complex_str(const Complex& c) {
    if (c.imag() == 0.0) return format_double(c.real());
    std::string s = format_double(c.real());
    s += (c.imag() < 0.0) ? "-" : "+";
    s += format_double(std::abs(c.imag()));
    s += "i";
    return s;
}

template <typename T, typename Fmt>
std::string list_str(const std::vector<T>& items, Fmt&& fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += fmt(items[i]);
    }
    s += "]";
    return s;
}

}  // namespace

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    auto length = [](double v) { return format_double(v) + "m"; };
    auto angle = [](double v) { return format_double(v) + "rad"; };
    auto number = [](double v) { return format_double(v); };

    out << "[geometry]\n";
    out << "slit_width = " << length(cfg.slit_width_m) << "\n";
    out << "pitch = " << length(cfg.pitch_m) << "\n";
    out << "slit_count = " << cfg.slit_count << "\n";
    if (cfg.slit_height_m) out << "slit_height = " << length(*cfg.slit_height_m) << "\n";
    if (cfg.film_thickness_m) out << "film_thickness = " << length(*cfg.film_thickness_m) << "\n";

    out << "\n[illumination]\n";
    out << "wavelength = " << length(cfg.wavelength_m) << "\n";
    if (!cfg.slit_amplitudes.empty())
        out << "amplitudes = " << list_str(cfg.slit_amplitudes, complex_str) << "\n";

    out << "\n[coupling]\n";
    out << "n_eff = " << number(cfg.n_eff) << "\n";
    out << "hop_amplitudes = " << list_str(cfg.hop_amplitudes, number) << "\n";
    out << "max_hops = " << cfg.max_hops << "\n";
    if (cfg.coupling_table) {
        const CouplingTable& t = *cfg.coupling_table;
        out << "table_wavelengths = " << list_str(t.wavelengths_m, length) << "\n";
        out << "table_n_eff = " << list_str(t.n_eff, number) << "\n";
        for (std::size_t m = 0; m < t.hop_amplitudes.front().size(); ++m) {
            std::vector<double> column;
            column.reserve(t.hop_amplitudes.size());
            for (const auto& row : t.hop_amplitudes) column.push_back(row[m]);
            out << "table_c" << (m + 1) << " = " << list_str(column, number) << "\n";
        }
    }

    out << "\n[grid]\n";
    out << "theta_min = " << angle(cfg.theta_min_rad) << "\n";
    out << "theta_max = " << angle(cfg.theta_max_rad) << "\n";
    out << "points = " << cfg.grid_points << "\n";

    if (!cfg.masks.empty()) {
        out << "\n[pattern]\n";
        out << "masks = " << list_str(cfg.masks, [](const Mask& m) { return mask_label(m); })
            << "\n";
    }

    out << "\n[rs]\n";
    out << "samples_per_slit = " << cfg.rs.samples_per_slit << "\n";
    out << "screen_distance = " << length(cfg.rs.screen_distance_m) << "\n";

    if (cfg.sweep) {
        const SweepConfig& sw = *cfg.sweep;
        out << "\n[sweep]\n";
        const char* kind = sw.kind == SweepKind::intensity_map  ? "intensity_map"
                           : sw.kind == SweepKind::kappa_map    ? "kappa_map"
                                                                : "kappa_at_center";
        out << "kind = " << kind << "\n";
        out << "lambda_min = " << length(sw.lambda_min_m) << "\n";
        out << "lambda_max = " << length(sw.lambda_max_m) << "\n";
        out << "lambda_points = " << sw.lambda_points << "\n";
        if (sw.width_points) {
            out << "width_min = " << length(*sw.width_min_m) << "\n";
            out << "width_max = " << length(*sw.width_max_m) << "\n";
            out << "width_points = " << *sw.width_points << "\n";
        }
    }

    if (!cfg.output_prefix.empty()) {
        out << "\n[output]\n";
        out << "prefix = " << cfg.output_prefix << "\n";
    }
    return out.str();
}

}  // namespace slitsim
