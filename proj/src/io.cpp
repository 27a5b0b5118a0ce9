#include "histarith/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace histarith {

namespace {

bool parse_double(const std::string& token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw data_error(what);
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw data_error(std::string("missing field: ") + name);
    return *it;
}

void check_header(const nlohmann::json& j, const char* expected_kind) {
    const nlohmann::json& ver = field(j, "format_version");
    require(ver.is_number_integer() && ver.get<int>() == 1,
            "unsupported format_version (expected 1)");
    const nlohmann::json& kind = field(j, "kind");
    require(kind.is_string() && kind.get<std::string>() == expected_kind,
            std::string("kind is not \"") + expected_kind + "\"");
}

std::vector<double> real_array(const nlohmann::json& j, const char* name) {
    const nlohmann::json& a = field(j, name);
    require(a.is_array(), std::string(name) + " is not an array");
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& v : a) {
        require(v.is_number(), std::string(name) + " contains a non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

Sample read_sample_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string token = trim(line);
        if (token.empty()) continue;
        double v;
        if (parse_double(token, v)) {
            values.push_back(v);
        } else if (first_content) {
            // header line
        } else {
            std::ostringstream msg;
            msg << "line " << lineno << ": not a number";
            throw data_error(msg.str());
        }
        first_content = false;
    }
    return Sample::from_values(std::move(values));
}

Sample read_sample_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    return read_sample_csv(in);
}

const char* qmode_name(QMode m) {
    return m == QMode::chi_square ? "chi_square" : "zero";
}

QMode qmode_from_name(const std::string& s) {
    if (s == "chi_square") return QMode::chi_square;
    if (s == "zero") return QMode::zero;
    throw data_error("unknown q_mode: " + s);
}

const char* boundary_name(BoundaryPlacement b) {
    switch (b) {
    case BoundaryPlacement::midpoint: return "midpoint";
    case BoundaryPlacement::left_extreme: return "left_extreme";
    default: return "right_extreme";
    }
}

BoundaryPlacement boundary_from_name(const std::string& s) {
    if (s == "midpoint") return BoundaryPlacement::midpoint;
    if (s == "left_extreme" || s == "left") return BoundaryPlacement::left_extreme;
    if (s == "right_extreme" || s == "right") return BoundaryPlacement::right_extreme;
    throw data_error("unknown boundary_placement: " + s);
}

HistogramDocument HistogramDocument::from(const ReliableHistogram& h, const BinningConfig& config) {
    HistogramDocument doc;
    doc.edges.reserve(h.bins.size() + 1);
    for (const Bin& b : h.bins) {
        doc.edges.push_back(b.lo);
        doc.counts.push_back(b.count);
        doc.gammas.push_back(b.gamma);
    }
    doc.edges.push_back(h.bins.back().hi);
    doc.n = h.n;
    doc.gamma_per_bin = config.gamma_per_bin.gamma;
    doc.q_mode = config.q_mode;
    doc.boundary_placement = config.boundary_placement;
    doc.degenerate = h.degenerate;
    doc.unreliable = h.unreliable;
    return doc;
}

ReliableHistogram HistogramDocument::to_histogram() const {
    ReliableHistogram h;
    h.bins.reserve(counts.size());
    double gamma = 1.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        Bin b;
        b.lo = edges[j];
        b.hi = edges[j + 1];
        b.count = counts[j];
        b.gamma = gammas[j];
        h.bins.push_back(std::move(b));
        gamma *= gammas[j];
    }
    h.n = n;
    h.gamma = gamma;
    h.degenerate = degenerate;
    h.unreliable = unreliable;
    return h;
}

nlohmann::json to_json(const HistogramDocument& doc) {
    nlohmann::json j;
    j["format_version"] = doc.format_version;
    j["kind"] = "histogram";
    j["edges"] = doc.edges;
    j["counts"] = doc.counts;
    j["gammas"] = doc.gammas;
    j["n"] = doc.n;
    j["config"] = {
        {"gamma_per_bin", doc.gamma_per_bin},
        {"q_mode", qmode_name(doc.q_mode)},
        {"boundary_placement", boundary_name(doc.boundary_placement)},
    };
    j["flags"] = {
        {"degenerate", doc.degenerate},
        {"unreliable", doc.unreliable},
    };
    return j;
}

namespace {

HistogramDocument parse_histogram_checked(const nlohmann::json& j) {
    check_header(j, "histogram");
    HistogramDocument doc;
    doc.edges = real_array(j, "edges");
    doc.gammas = real_array(j, "gammas");
    const nlohmann::json& counts = field(j, "counts");
    require(counts.is_array(), "counts is not an array");
    for (const auto& c : counts) {
        require(c.is_number_integer(), "counts contains a non-integer entry");
        doc.counts.push_back(c.get<std::int64_t>());
    }
    const nlohmann::json& n = field(j, "n");
    require(n.is_number_integer(), "n is not an integer");
    doc.n = n.get<std::int64_t>();

    require(doc.edges.size() >= 2, "edges must hold at least two entries");
    for (std::size_t i = 0; i + 1 < doc.edges.size(); ++i)
        require(doc.edges[i] < doc.edges[i + 1], "edges not increasing");
    require(doc.counts.size() == doc.edges.size() - 1 &&
                doc.gammas.size() == doc.counts.size(),
            "inconsistent array lengths");
    std::int64_t total = 0;
    for (std::int64_t c : doc.counts) {
        require(c >= 1, "counts must be positive");
        total += c;
    }
    require(total == doc.n, "counts do not sum to n");
    for (double g : doc.gammas)
        require(g > 0.0 && g <= 1.0, "gamma out of range (0, 1]");

    const nlohmann::json& config = field(j, "config");
    doc.gamma_per_bin = field(config, "gamma_per_bin").get<double>();
    require(doc.gamma_per_bin > 0.0 && doc.gamma_per_bin < 1.0,
            "gamma_per_bin out of range (0, 1)");
    doc.q_mode = qmode_from_name(field(config, "q_mode").get<std::string>());
    doc.boundary_placement =
        boundary_from_name(field(config, "boundary_placement").get<std::string>());
    const nlohmann::json& flags = field(j, "flags");
    doc.degenerate = field(flags, "degenerate").get<bool>();
    doc.unreliable = field(flags, "unreliable").get<bool>();
    return doc;
}

} // namespace

HistogramDocument parse_histogram_document(const nlohmann::json& j) {
    try {
        return parse_histogram_checked(j);
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("invalid histogram document: ") + e.what());
    }
}

ResultDocument ResultDocument::from(const ResultDistribution& d) {
    ResultDocument doc;
    doc.op = d.op;
    doc.breakpoints = d.cdf.breakpoints;
    auto pack = [](const PiecewiseAnalyticCurve& c) {
        std::vector<std::array<double, 7>> out;
        out.reserve(c.segments.size());
        for (const BasisCoeffs& s : c.segments)
            out.push_back({s.c1, s.cz, s.czz, s.clog, s.czlog, s.cinv, s.cinv2});
        return out;
    };
    doc.cdf_segments = pack(d.cdf);
    doc.pdf_segments = pack(d.pdf);
    doc.provenance = d.provenance;
    doc.support = d.support;
    return doc;
}

ResultDistribution ResultDocument::to_result() const {
    ResultDistribution d;
    d.op = op;
    auto unpack = [&](const std::vector<std::array<double, 7>>& segs, CurveKind kind) {
        PiecewiseAnalyticCurve c;
        c.kind = kind;
        c.breakpoints = breakpoints;
        c.segments.reserve(segs.size());
        for (const auto& a : segs) {
            BasisCoeffs s;
            s.c1 = a[0];
            s.cz = a[1];
            s.czz = a[2];
            s.clog = a[3];
            s.czlog = a[4];
            s.cinv = a[5];
            s.cinv2 = a[6];
            c.segments.push_back(s);
        }
        return c;
    };
    d.cdf = unpack(cdf_segments, CurveKind::cdf);
    d.pdf = unpack(pdf_segments, CurveKind::pdf);
    d.provenance = provenance;
    d.support = support;
    return d;
}

nlohmann::json to_json(const ResultDocument& doc) {
    nlohmann::json j;
    j["format_version"] = doc.format_version;
    j["kind"] = "result";
    j["op"] = op_name(doc.op);
    j["breakpoints"] = doc.breakpoints;
    j["cdf_segments"] = doc.cdf_segments;
    j["pdf_segments"] = doc.pdf_segments;
    nlohmann::json prov = nlohmann::json::array();
    for (const IntervalProvenance& p : doc.provenance) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [a, b] : p.pairs) pairs.push_back({a, b});
        prov.push_back({
            {"interval_index", p.interval_index},
            {"pairs", pairs},
            {"gamma_product", p.gamma_product},
        });
    }
    j["provenance"] = prov;
    j["support"] = {doc.support.first, doc.support.second};
    return j;
}

namespace {

ResultDocument parse_result_checked(const nlohmann::json& j) {
    check_header(j, "result");
    ResultDocument doc;
    doc.op = op_from_name(field(j, "op").get<std::string>());
    doc.breakpoints = real_array(j, "breakpoints");
    require(doc.breakpoints.size() >= 2, "breakpoints must hold at least two entries");
    for (std::size_t i = 0; i + 1 < doc.breakpoints.size(); ++i)
        require(doc.breakpoints[i] < doc.breakpoints[i + 1], "breakpoints not increasing");

    auto segments = [&](const char* name) {
        const nlohmann::json& a = field(j, name);
        require(a.is_array(), std::string(name) + " is not an array");
        std::vector<std::array<double, 7>> out;
        for (const auto& seg : a) {
            require(seg.is_array() && seg.size() == 7,
                    std::string(name) + " entries must hold 7 coefficients");
            std::array<double, 7> s;
            for (std::size_t k = 0; k < 7; ++k) {
                require(seg[k].is_number(), std::string(name) + " contains a non-numeric entry");
                s[k] = seg[k].get<double>();
            }
            out.push_back(s);
        }
        return out;
    };
    doc.cdf_segments = segments("cdf_segments");
    doc.pdf_segments = segments("pdf_segments");
    require(doc.cdf_segments.size() == doc.breakpoints.size() - 1 &&
                doc.pdf_segments.size() == doc.cdf_segments.size(),
            "inconsistent segment count");

    const nlohmann::json& prov = field(j, "provenance");
    require(prov.is_array(), "provenance is not an array");
    for (const auto& p : prov) {
        IntervalProvenance ip;
        ip.interval_index = field(p, "interval_index").get<std::int64_t>();
        const nlohmann::json& pairs = field(p, "pairs");
        require(pairs.is_array(), "pairs is not an array");
        for (const auto& q : pairs) {
            require(q.is_array() && q.size() == 2, "pairs entries must hold 2 indices");
            ip.pairs.emplace_back(q[0].get<std::int32_t>(), q[1].get<std::int32_t>());
        }
        ip.gamma_product = field(p, "gamma_product").get<double>();
        doc.provenance.push_back(std::move(ip));
    }
    const std::vector<double> support = real_array(j, "support");
    require(support.size() == 2, "support must hold 2 entries");
    doc.support = {support[0], support[1]};
    return doc;
}

} // namespace

ResultDocument parse_result_document(const nlohmann::json& j) {
    try {
        return parse_result_checked(j);
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("invalid result document: ") + e.what());
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw data_error("malformed JSON: " + path);
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw data_error("write failed: " + path);
}

HistogramDocument load_histogram_document(const std::string& path) {
    return parse_histogram_document(load_json_file(path));
}

ResultDocument load_result_document(const std::string& path) {
    return parse_result_document(load_json_file(path));
}

} // namespace histarith
