#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"

#include "cli_runner.hpp"
#include "helpers.hpp"

namespace {

const std::string kUnitHistJson = R"({
  "config": {"boundary_placement": "midpoint", "gamma_per_bin": 0.999, "q_mode": "chi_square"},
  "counts": [2],
  "edges": [0.0, 1.0],
  "flags": {"degenerate": false, "unreliable": false},
  "format_version": 1,
  "gammas": [0.999],
  "kind": "histogram",
  "n": 2
}
)";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_of(const histarith::Sample& s) {
    std::string text;
    for (double v : s.values()) {
        text += fmt17(v);
        text += '\n';
    }
    return text;
}

// One shared fixture directory per process.
struct Paths {
    std::string dir, x, y, r;
    Paths() {
        dir = th::cli_scratch_dir().string();
        x = dir + "/x.json";
        y = dir + "/y.json";
        r = dir + "/r.json";
        th::write_file(x, kUnitHistJson);
        th::write_file(y, kUnitHistJson);
        th::run_cli("op --op add --x " + x + " --y " + y + " --output " + r);
    }
};

const Paths& paths() {
    static Paths p;
    return p;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("op then eval reproduces the analytic values") {
    const Paths& p = paths();
    const th::CliResult op = th::run_cli("op --op add --x " + p.x + " --y " + p.y +
                                         " --output " + p.r);
    CHECK(op.exit_code == 0);
    CHECK(op.err == "result support [0, 2], 2 segment(s)\n");
    CHECK(op.out.empty());

    const th::CliResult at1 =
        th::run_cli("eval --dist " + p.r + " --at 1 --what cdf");
    CHECK(at1.exit_code == 0);
    CHECK(at1.out == "0.5\n");

    const th::CliResult at05 =
        th::run_cli("eval --dist " + p.r + " --at 0.5 --what cdf");
    CHECK(at05.out == "0.125\n");

    const th::CliResult pdf1 =
        th::run_cli("eval --dist " + p.r + " --at 1 --what pdf");
    CHECK(pdf1.out == "1\n");

    const th::CliResult mean = th::run_cli("eval --dist " + p.r + " --what mean");
    CHECK(mean.exit_code == 0);
    CHECK(std::fabs(std::strtod(mean.out.c_str(), nullptr) - 1.0) <= 1e-12);

    // eval also accepts histogram documents.
    const th::CliResult hist =
        th::run_cli("eval --dist " + p.x + " --at 0.25 --what cdf");
    CHECK(hist.exit_code == 0);
    CHECK(hist.out == "0.25\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(th::run_cli("").exit_code == 2);
    CHECK(th::run_cli("frobnicate").exit_code == 2);
    CHECK(th::run_cli("op --op pow --x a --y b --output c").exit_code == 2);
    CHECK(th::run_cli("--help").exit_code == 0);

    const Paths& p = paths();
    const th::CliResult noat = th::run_cli("eval --dist " + p.r + " --what cdf");
    CHECK(noat.exit_code == 2);
    CHECK(noat.err.find("--at is required") != std::string::npos);

    const th::CliResult pts =
        th::run_cli("curve --dist " + p.r + " --points 0 --output " +
                    paths().dir + "/none.tsv");
    CHECK(pts.exit_code == 2);
    CHECK(pts.err.find("--points must be >= 1") != std::string::npos);
}

TEST_CASE("data errors exit 3") {
    const Paths& p = paths();
    const std::string bad = p.dir + "/bad.csv";
    th::write_file(bad, "1.0\nabc\n");
    const th::CliResult build =
        th::run_cli("build --input " + bad + " --output " + p.dir + "/nope.json");
    CHECK(build.exit_code == 3);
    CHECK(build.err.find("line 2: not a number") != std::string::npos);

    const th::CliResult missing =
        th::run_cli("eval --dist " + p.dir + "/absent.json --at 0 --what cdf");
    CHECK(missing.exit_code == 3);
    CHECK(missing.err.find("cannot open file") != std::string::npos);

    // A result document where a histogram is required.
    const th::CliResult wrongkind =
        th::run_cli("op --op add --x " + p.r + " --y " + p.y + " --output " +
                    p.dir + "/nope2.json");
    CHECK(wrongkind.exit_code == 3);
    CHECK(wrongkind.err.find("kind") != std::string::npos);
}

TEST_CASE("domain errors exit 4") {
    const Paths& p = paths();
    const th::CliResult div = th::run_cli("op --op div --x " + p.x + " --y " + p.y +
                                          " --output " + p.dir + "/nope3.json");
    CHECK(div.exit_code == 4);
    CHECK(div.err.find("quotient requires strictly positive X support") !=
          std::string::npos);

    const th::CliResult mul = th::run_cli("op --op mul --x " + p.x + " --y " + p.y +
                                          " --output " + p.dir + "/nope4.json");
    CHECK(mul.exit_code == 4);
}

TEST_CASE("build and quality round trip on a real sample") {
    const Paths& p = paths();
    const std::string csv = p.dir + "/s.csv";
    th::write_file(csv, csv_of(th::uniform_sample(400, 5, 1.0, 3.0)));

    const std::string h1 = p.dir + "/h1.json", h2 = p.dir + "/h2.json";
    const th::CliResult b1 = th::run_cli("build --input " + csv + " --output " + h1);
    CHECK(b1.exit_code == 0);
    CHECK(b1.err.find("built ") == 0);
    CHECK(b1.err.find("gamma ") != std::string::npos);
    const th::CliResult b2 = th::run_cli("build --input " + csv + " --output " + h2);
    CHECK(b2.exit_code == 0);
    CHECK(th::read_file(h1) == th::read_file(h2)); // byte-deterministic
    CHECK(!th::read_file(h1).empty());

    const th::CliResult q = th::run_cli("quality --hist " + h1 + " --sample " + csv);
    CHECK(q.exit_code == 0);
    const std::vector<std::string> lines = split_lines(q.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("gamma = ", 0) == 0);
    CHECK(lines[1].rfind("D = ", 0) == 0);
    CHECK(lines[2].rfind("alpha = ", 0) == 0);
    CHECK(lines[3].rfind("Q = ", 0) == 0);
    const double gv = std::strtod(lines[0].c_str() + 8, nullptr);
    const double dv = std::strtod(lines[1].c_str() + 4, nullptr);
    const double av = std::strtod(lines[2].c_str() + 8, nullptr);
    const double qv = std::strtod(lines[3].c_str() + 4, nullptr);
    CHECK(gv > 0.0);
    CHECK(gv <= 1.0);
    CHECK(dv >= 0.0);
    CHECK(dv <= 1.0);
    CHECK(av >= 0.0);
    CHECK(av <= 1.0);
    CHECK(qv == gv * av); // %.17g round-trips exactly
}

TEST_CASE("oracle modes report and annotate") {
    const Paths& p = paths();
    const std::string xs = p.dir + "/xs.csv", ys = p.dir + "/ys.csv";
    th::write_file(xs, csv_of(th::uniform_sample(200, 21, 1.0, 2.0)));
    th::write_file(ys, csv_of(th::uniform_sample(200, 22, 1.0, 2.0)));

    const th::CliResult mc = th::run_cli("oracle --op mul --x-sample " + xs +
                                         " --y-sample " + ys + " --mc 20000 --seed 3");
    CHECK(mc.exit_code == 0);
    {
        const std::vector<std::string> lines = split_lines(mc.out);
        REQUIRE(lines.size() == 2);
        CHECK(lines[0].rfind("D = ", 0) == 0);
        CHECK(lines[1].rfind("alpha = ", 0) == 0);
        CHECK(std::strtod(lines[0].c_str() + 4, nullptr) < 0.05);
    }

    const th::CliResult pw = th::run_cli("oracle --op mul --x-sample " + xs +
                                         " --y-sample " + ys);
    CHECK(pw.exit_code == 0);
    {
        const std::vector<std::string> lines = split_lines(pw.out);
        REQUIRE(lines.size() == 3);
        CHECK(lines[2].find("pairwise values share operands") != std::string::npos);
    }

    // Compare against a stored result instead of rebuilding.
    const std::string hxj = p.dir + "/hx.json", hyj = p.dir + "/hy.json";
    const std::string rj = p.dir + "/rmul.json";
    CHECK(th::run_cli("build --input " + xs + " --output " + hxj).exit_code == 0);
    CHECK(th::run_cli("build --input " + ys + " --output " + hyj).exit_code == 0);
    CHECK(th::run_cli("op --op mul --x " + hxj + " --y " + hyj + " --output " + rj)
              .exit_code == 0);
    const th::CliResult cmp = th::run_cli("oracle --op mul --x-sample " + xs +
                                          " --y-sample " + ys + " --compare " + rj +
                                          " --mc 20000 --seed 3");
    CHECK(cmp.exit_code == 0);
    CHECK(split_lines(cmp.out).size() == 2);
}

TEST_CASE("curve rows are bit-identical to eval") {
    const Paths& p = paths();
    const std::string tsv = p.dir + "/c.tsv";
    const th::CliResult cv =
        th::run_cli("curve --dist " + p.r + " --points 8 --output " + tsv);
    CHECK(cv.exit_code == 0);
    CHECK(cv.err == "wrote 9 row(s)\n"); // 9 grid points; breakpoints coincide

    const std::vector<std::string> lines = split_lines(th::read_file(tsv));
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "z\tcdf\tpdf");
    for (std::size_t i : {std::size_t(1), std::size_t(4), std::size_t(9)}) {
        const std::string& row = lines[i];
        const std::size_t t1 = row.find('\t');
        const std::size_t t2 = row.find('\t', t1 + 1);
        REQUIRE(t1 != std::string::npos);
        REQUIRE(t2 != std::string::npos);
        const std::string z = row.substr(0, t1);
        const std::string cdf = row.substr(t1 + 1, t2 - t1 - 1);
        const std::string pdf = row.substr(t2 + 1);
        const th::CliResult ec =
            th::run_cli("eval --dist " + p.r + " --at " + z + " --what cdf");
        CHECK(ec.out == cdf + "\n"); // zero-ULP agreement as text
        const th::CliResult ep =
            th::run_cli("eval --dist " + p.r + " --at " + z + " --what pdf");
        CHECK(ep.out == pdf + "\n");
    }

    const std::string tsv2 = p.dir + "/c2.tsv";
    CHECK(th::run_cli("curve --dist " + p.r + " --points 8 --output " + tsv2)
              .exit_code == 0);
    CHECK(th::read_file(tsv) == th::read_file(tsv2));
}

} // TEST_SUITE
