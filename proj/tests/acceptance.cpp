// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Returns nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncw/io.hpp"
#include "ncw/selftest.hpp"

using namespace ncw;

namespace {

struct Criterion {
    int number;
    std::string label;
    bool passed;
    double seconds;
    std::string detail;
};

std::vector<Criterion> g_results;

void report(int number, const std::string& label, const selftest::SuiteResult& r,
            double time_limit = 0.0) {
    bool ok = r.passed;
    std::string detail = r.detail;
    if (time_limit > 0.0 && r.seconds > time_limit) {
        ok = false;
        detail += " [exceeded " + std::to_string(time_limit) + " s limit]";
    }
    g_results.push_back({number, label, ok, r.seconds, detail});
}

struct CliRun {
    int status;
    std::string output;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), std::move(out)};
}

selftest::SuiteResult criterion10_cli(const std::string& cli) {
    return selftest::timed("cli: selftest and structured round-trip", [&](selftest::SuiteResult& r) {
        if (cli.empty()) {
            r.fail("no --cli path given");
            return;
        }
        CliRun self = run_cli(cli, "selftest --seed 1");
        if (self.status != 0) {
            r.fail("selftest exited with status " + std::to_string(self.status));
            return;
        }
        // structured output round-trips and is byte-deterministic
        std::string args = "nc-mul \"U1^2*U2^-1 + (1/2)*U2\" \"U2*U1\" --format records";
        CliRun a = run_cli(cli, args);
        CliRun b = run_cli(cli, args);
        if (a.status != 0 || a.output != b.output) {
            r.fail("records output not deterministic");
            return;
        }
        std::istringstream is(a.output);
        std::string line;
        std::getline(is, line);
        if (line != "#ncw-records v1") {
            r.fail("missing records header");
            return;
        }
        std::getline(is, line);
        auto j = nlohmann::json::parse(line);
        NCElement parsed = io::load_nc_element(j.at("result"));
        NCElement expect = nc_mul(parse_nc("U1^2*U2^-1 + (1/2)*U2"), parse_nc("U2*U1"));
        if (!(parsed == expect)) {
            r.fail("records output did not re-parse to an equal element");
            return;
        }
        r.detail = "selftest exit 0; records re-parse and match";
    });
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    uint64_t seed = 1;

    auto t0 = std::chrono::steady_clock::now();
    report(1, "A_theta arithmetic: associativity, unit, distributivity (>=500 triples, <10s)",
           selftest::suite_algebra(seed), 10.0);
    report(2, "derivation: delta_tau Leibniz and trace symmetry (>=500 pairs)",
           selftest::suite_derivation(seed));
    report(3, "Leibniz gate: generators, 4 charges, >=50 sections, fd check 1e-6",
           selftest::suite_leibniz(seed));
    report(4, "lifting: F B1 = delta(F) + B2 F for ranks <= 3, >=100 samples",
           selftest::suite_lifting(seed));
    report(5, "cyclic identities to degree 5 on shipped algebras and graded category",
           selftest::suite_cyclic_identities());
    report(6, "homology values: HH(Q), HC(Q), HH_0 oracle, bar/Connes oracles (<60s)",
           selftest::suite_homology_values(), 60.0);
    report(7, "Morita tables: A vs M_n(A), n in {2,3}, A in {Q, Q[x]/(x^2)}",
           selftest::suite_morita());
    report(8, "t-structure: partition, shifts, K0 splitting, adjunction, dim_theta > 0",
           selftest::suite_tstructure(seed));
    report(9, "one-object dg category reproduces the algebra pipeline",
           selftest::suite_consistency());
    report(10, "CLI selftest exits 0, structured output round-trips (<5 min)",
           criterion10_cli(cli), 300.0);
    auto t1 = std::chrono::steady_clock::now();

    bool all = true;
    for (const auto& c : g_results) {
        std::ostringstream os;
        os << "CRITERION " << c.number << " [" << c.label << "]: "
           << (c.passed ? "PASS" : "FAIL");
        os << " (" << static_cast<int>(c.seconds * 1000) << " ms)";
        if (!c.detail.empty()) os << " -- " << c.detail;
        std::cout << os.str() << "\n";
        all = all && c.passed;
    }
    double total = std::chrono::duration<double>(t1 - t0).count();
    std::cout << (all ? "ACCEPTANCE: ALL CRITERIA PASSED" : "ACCEPTANCE: FAILURES") << " ("
              << static_cast<int>(total) << " s total)\n";
    return all ? 0 : 1;
}
