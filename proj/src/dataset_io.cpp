#include <txplace/dataset_io.hpp>

#include <txplace/detail/format.hpp>
#include <txplace/detail/rng.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fs = std::filesystem;

namespace txplace {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

// ---------------------------------------------------------------------------
// PGM
// ---------------------------------------------------------------------------

class PgmHeaderParser {
  public:
    PgmHeaderParser(const std::string& bytes, const std::string& path) : bytes_(bytes), path_(path) {}

    int next_int() {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_])))
            fail("expected integer in header");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1 << 30) fail("header integer out of range");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    // The raster starts one whitespace byte after maxval.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            fail("missing whitespace before raster");
        return pos_ + 1;
    }

    void expect_magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') fail("not a P5 PGM file");
        pos_ = 2;
    }

  private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::runtime_error(path_ + ": " + what);
    }

    const std::string& bytes_;
    const std::string& path_;
    std::size_t pos_ = 0;
};

}  // namespace

PgmImage read_pgm(const std::string& path) {
    std::string bytes = slurp(path);
    PgmHeaderParser hdr(bytes, path);
    hdr.expect_magic();
    PgmImage img;
    img.width = hdr.next_int();
    img.height = hdr.next_int();
    img.maxval = hdr.next_int();
    if (img.width < 1 || img.height < 1)
        throw std::runtime_error(path + ": bad dimensions " + std::to_string(img.width) + "x" +
                                 std::to_string(img.height));
    if (img.maxval < 1 || img.maxval > 65535)
        throw std::runtime_error(path + ": unsupported maxval " + std::to_string(img.maxval));
    std::size_t raster = hdr.raster_offset();
    const int bpp = img.maxval > 255 ? 2 : 1;
    std::size_t expected = static_cast<std::size_t>(img.width) * img.height * bpp;
    if (bytes.size() - raster != expected)
        throw std::runtime_error(path + ": raster is " + std::to_string(bytes.size() - raster) +
                                 " bytes, expected " + std::to_string(expected));
    img.samples.resize(img.height, img.width);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + raster;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (bpp == 1) {
                img.samples(y, x) = *p++;
            } else {
                img.samples(y, x) = static_cast<std::uint16_t>((p[0] << 8) | p[1]);
                p += 2;
            }
        }
    }
    return img;
}

namespace {

std::string pgm_header(int width, int height, int maxval) {
    return "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
           std::to_string(maxval) + "\n";
}

}  // namespace

void write_pgm8(const GridByte& samples, const std::string& path) {
    std::string bytes = pgm_header(static_cast<int>(samples.cols()), static_cast<int>(samples.rows()), 255);
    bytes.reserve(bytes.size() + static_cast<std::size_t>(samples.size()));
    for (Eigen::Index y = 0; y < samples.rows(); ++y)
        for (Eigen::Index x = 0; x < samples.cols(); ++x)
            bytes.push_back(static_cast<char>(samples(y, x)));
    spill(path, bytes);
}

void write_pgm16(const GridWord& samples, const std::string& path) {
    std::string bytes = pgm_header(static_cast<int>(samples.cols()), static_cast<int>(samples.rows()), 65535);
    bytes.reserve(bytes.size() + 2 * static_cast<std::size_t>(samples.size()));
    for (Eigen::Index y = 0; y < samples.rows(); ++y) {
        for (Eigen::Index x = 0; x < samples.cols(); ++x) {
            std::uint16_t v = samples(y, x);
            bytes.push_back(static_cast<char>(v >> 8));
            bytes.push_back(static_cast<char>(v & 0xff));
        }
    }
    spill(path, bytes);
}

void write_building_map(const BuildingMap& map, const std::string& path) {
    GridByte out(map.height(), map.width());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x) out(y, x) = map.occupied(y, x) ? 255 : 0;
    write_pgm8(out, path);
}

BuildingMap read_building_map(const std::string& path, std::string id) {
    PgmImage img = read_pgm(path);
    if (img.maxval != 255) throw std::runtime_error(path + ": building maps must be 8-bit");
    GridByte cells(img.height, img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::uint16_t v = img.samples(y, x);
            if (v != 0 && v != 255)
                throw std::runtime_error(path + ": building map pixel must be 0 or 255, got " +
                                         std::to_string(v));
            cells(y, x) = v == 255 ? 1 : 0;
        }
    }
    return BuildingMap(std::move(cells), std::move(id));
}

void write_radio_map_pgm(const RadioMap& rm, const std::string& path) {
    GridByte out(rm.height(), rm.width());
    for (int y = 0; y < rm.height(); ++y) {
        for (int x = 0; x < rm.width(); ++x) {
            double v = std::floor(rm.values(y, x) + 0.5);
            out(y, x) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
    }
    write_pgm8(out, path);
}

// ---------------------------------------------------------------------------
// Score maps
// ---------------------------------------------------------------------------

namespace {

void append_le64(std::string& bytes, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

double take_le64(const unsigned char* p) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, sizeof v);
    return v;
}

// Key/value lines; the value is everything after the first space.
std::vector<std::pair<std::string, std::string>> parse_record(const std::string& text,
                                                              const std::string& path,
                                                              const std::string& magic) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != magic)
        throw std::runtime_error(path + ": missing '" + magic + "' header");
    std::vector<std::pair<std::string, std::string>> fields;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error(path + ": malformed line '" + line + "'");
        fields.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    return fields;
}

std::string find_field(const std::vector<std::pair<std::string, std::string>>& fields,
                       const std::string& key, const std::string& path) {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    throw std::runtime_error(path + ": missing field '" + key + "'");
}

}  // namespace

void write_score_map(const NormalizedScoreMap& nsm, const std::string& path) {
    if (!nsm.region) throw std::invalid_argument("write_score_map: score map has no region");
    std::string bytes;
    bytes.reserve(8 * static_cast<std::size_t>(nsm.values.size()));
    for (Eigen::Index i = 0; i < nsm.values.size(); ++i) append_le64(bytes, nsm.values(i));
    spill(path, bytes);

    // Grid dimensions are not recoverable from the region alone; members bound
    // them from below, which is enough for consistency checks on ingest.
    int max_y = 0, max_x = 0;
    for (const Placement& p : nsm.region->members) {
        max_y = std::max(max_y, p.y);
        max_x = std::max(max_x, p.x);
    }
    std::string meta = "txplace-scores v1\n";
    meta += "objective " + to_string(nsm.objective) + "\n";
    meta += "width " + std::to_string(max_x + 1 + nsm.region->margin) + "\n";
    meta += "height " + std::to_string(max_y + 1 + nsm.region->margin) + "\n";
    meta += "margin " + std::to_string(nsm.region->margin) + "\n";
    meta += "count " + std::to_string(nsm.region->size()) + "\n";
    meta += "min_val " + detail::real17(nsm.min_val) + "\n";
    meta += "max_val " + detail::real17(nsm.max_val) + "\n";
    spill(path + ".meta", meta);
}

NormalizedScoreMap read_score_map(const std::string& path,
                                  std::shared_ptr<const FeasibleRegion> region) {
    if (!region) throw std::invalid_argument("read_score_map: null region");
    std::string meta_path = path + ".meta";
    auto fields = parse_record(slurp(meta_path), meta_path, "txplace-scores v1");

    NormalizedScoreMap nsm;
    nsm.objective = objective_from_string(find_field(fields, "objective", meta_path));
    nsm.min_val = detail::parse_real(find_field(fields, "min_val", meta_path));
    nsm.max_val = detail::parse_real(find_field(fields, "max_val", meta_path));
    int margin = static_cast<int>(detail::parse_int(find_field(fields, "margin", meta_path)));
    std::int64_t count = detail::parse_int(find_field(fields, "count", meta_path));
    if (margin != region->margin)
        throw std::runtime_error(meta_path + ": margin " + std::to_string(margin) +
                                 " does not match region margin " + std::to_string(region->margin));
    if (count != static_cast<std::int64_t>(region->size()))
        throw std::runtime_error(meta_path + ": count " + std::to_string(count) +
                                 " does not match region size " + std::to_string(region->size()));

    std::string bytes = slurp(path);
    std::size_t expected = 8 * static_cast<std::size_t>(count);
    if (bytes.size() != expected)
        throw std::runtime_error(path + ": score stream is " + std::to_string(bytes.size()) +
                                 " bytes, expected " + std::to_string(expected));
    nsm.region = std::move(region);
    nsm.values.resize(static_cast<Eigen::Index>(count));
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
    for (Eigen::Index i = 0; i < nsm.values.size(); ++i) nsm.values(i) = take_le64(p + 8 * i);
    return nsm;
}

// ---------------------------------------------------------------------------
// Ground truth
// ---------------------------------------------------------------------------

void write_ground_truth(const GroundTruthRecord& gt, const std::string& path) {
    using detail::real17;
    std::string s = "txplace-gt v1\n";
    s += "map_id " + gt.map_id + "\n";
    s += "margin " + std::to_string(gt.margin) + "\n";
    s += "region_size " + std::to_string(gt.region_size) + "\n";
    s += "evaluator " + gt.evaluator + "\n";
    s += "power_opt " + std::to_string(gt.optima.power_opt.y) + " " + std::to_string(gt.optima.power_opt.x) + "\n";
    s += "power_opt_value " + real17(gt.optima.power_opt_value) + "\n";
    s += "cov_opt " + std::to_string(gt.optima.cov_opt.y) + " " + std::to_string(gt.optima.cov_opt.x) + "\n";
    s += "cov_opt_value " + real17(gt.optima.cov_opt_value) + "\n";
    s += "balanced_opt " + std::to_string(gt.optima.balanced_opt.y) + " " + std::to_string(gt.optima.balanced_opt.x) + "\n";
    s += "balanced_d " + real17(gt.optima.balanced_d) + "\n";
    s += "balanced_cov_pct " + real17(gt.optima.balanced_cov_pct) + "\n";
    s += "balanced_pwr_pct " + real17(gt.optima.balanced_pwr_pct) + "\n";
    s += "cov_pct_at_power_opt " + real17(gt.optima.cov_pct_at_power_opt) + "\n";
    s += "pwr_pct_at_cov_opt " + real17(gt.optima.pwr_pct_at_cov_opt) + "\n";
    spill(path, s);
}

namespace {

Placement parse_placement(const std::string& v, const std::string& path) {
    std::size_t sp = v.find(' ');
    if (sp == std::string::npos) throw std::runtime_error(path + ": malformed placement '" + v + "'");
    return {static_cast<int>(detail::parse_int(v.substr(0, sp))),
            static_cast<int>(detail::parse_int(v.substr(sp + 1)))};
}

}  // namespace

GroundTruthRecord read_ground_truth(const std::string& path) {
    auto fields = parse_record(slurp(path), path, "txplace-gt v1");
    auto get = [&](const std::string& key) { return find_field(fields, key, path); };
    GroundTruthRecord gt;
    gt.map_id = get("map_id");
    gt.margin = static_cast<int>(detail::parse_int(get("margin")));
    gt.region_size = detail::parse_int(get("region_size"));
    gt.evaluator = get("evaluator");
    gt.optima.power_opt = parse_placement(get("power_opt"), path);
    gt.optima.power_opt_value = detail::parse_real(get("power_opt_value"));
    gt.optima.cov_opt = parse_placement(get("cov_opt"), path);
    gt.optima.cov_opt_value = detail::parse_real(get("cov_opt_value"));
    gt.optima.balanced_opt = parse_placement(get("balanced_opt"), path);
    gt.optima.balanced_d = detail::parse_real(get("balanced_d"));
    gt.optima.balanced_cov_pct = detail::parse_real(get("balanced_cov_pct"));
    gt.optima.balanced_pwr_pct = detail::parse_real(get("balanced_pwr_pct"));
    gt.optima.cov_pct_at_power_opt = detail::parse_real(get("cov_pct_at_power_opt"));
    gt.optima.pwr_pct_at_cov_opt = detail::parse_real(get("pwr_pct_at_cov_opt"));
    return gt;
}

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

void write_manifest(const Manifest& m, const std::string& path) {
    std::vector<ScenarioRecord> recs = m.scenarios;
    std::sort(recs.begin(), recs.end(),
              [](const ScenarioRecord& a, const ScenarioRecord& b) { return a.id < b.id; });
    std::string s = "txplace-manifest v1\n";
    for (const ScenarioRecord& r : recs) {
        s += r.id + "\t" + r.map_path + "\t" + r.power_scores + "\t" + r.coverage_scores + "\t" +
             r.ground_truth + "\t" + r.split + "\n";
    }
    spill(path, s);
}

Manifest read_manifest(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    if (!std::getline(in, line) || line != "txplace-manifest v1")
        throw std::runtime_error(path + ": missing 'txplace-manifest v1' header");
    Manifest m;
    std::set<std::string> seen;
    fs::path base = fs::path(path).parent_path();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 6)
            throw std::runtime_error(path + ": expected 6 tab-separated columns, got " +
                                     std::to_string(cols.size()));
        ScenarioRecord r{cols[0], cols[1], cols[2], cols[3], cols[4], cols[5]};
        if (!seen.insert(r.id).second)
            throw std::runtime_error(path + ": duplicate scenario id '" + r.id + "'");
        if (r.split != "-" && r.split != "train" && r.split != "val" && r.split != "test")
            throw std::runtime_error(path + ": bad split tag '" + r.split + "'");
        for (const std::string& ref : {r.map_path, r.power_scores, r.coverage_scores, r.ground_truth}) {
            if (ref == "-") continue;
            if (!fs::exists(base / ref))
                throw std::runtime_error(path + ": scenario " + r.id + " references missing file " + ref);
        }
        m.scenarios.push_back(std::move(r));
    }
    std::sort(m.scenarios.begin(), m.scenarios.end(),
              [](const ScenarioRecord& a, const ScenarioRecord& b) { return a.id < b.id; });
    return m;
}

void make_splits(Manifest& m, std::uint64_t seed, SplitFractions fractions) {
    if (m.scenarios.empty()) throw std::invalid_argument("make_splits: empty manifest");
    double sum = fractions.train + fractions.val + fractions.test;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("make_splits: fractions sum to " + detail::real17(sum) +
                                    ", expected 1");
    const std::size_t n = m.scenarios.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(detail::uniform_below(rng, i + 1));
        std::swap(order[i], order[j]);
    }
    auto b1 = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fractions.train));
    auto b2 = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (fractions.train + fractions.val)));
    for (std::size_t i = 0; i < n; ++i) {
        const char* tag = i < b1 ? "train" : i < b2 ? "val" : "test";
        m.scenarios[order[i]].split = tag;
    }
}

// ---------------------------------------------------------------------------
// Predictions
// ---------------------------------------------------------------------------

Prediction read_prediction(const std::string& path, const FeasibleRegion& region, int width,
                           int height) {
    std::string bytes = slurp(path);
    Prediction pred;
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
        PgmImage img = read_pgm(path);
        if (img.width != width || img.height != height)
            throw std::invalid_argument(path + ": prediction is " + std::to_string(img.width) + "x" +
                                        std::to_string(img.height) + ", expected " +
                                        std::to_string(width) + "x" + std::to_string(height));
        pred.bit_depth = img.maxval > 255 ? 16 : 8;
        pred.values.resize(static_cast<Eigen::Index>(region.size()));
        for (std::size_t i = 0; i < region.size(); ++i) {
            const Placement& p = region.members[i];
            pred.values(static_cast<Eigen::Index>(i)) = static_cast<double>(img.samples(p.y, p.x));
        }
        return pred;
    }
    std::size_t expected = 8 * region.size();
    if (bytes.size() != expected)
        throw std::invalid_argument(path + ": raw score stream is " + std::to_string(bytes.size()) +
                                    " bytes, expected " + std::to_string(expected));
    pred.bit_depth = 64;
    pred.values.resize(static_cast<Eigen::Index>(region.size()));
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
    for (Eigen::Index i = 0; i < pred.values.size(); ++i) pred.values(i) = take_le64(p + 8 * i);
    return pred;
}

}  // namespace txplace
