#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfa/cli.hpp"
#include "cfa/graded.hpp"
#include "support.hpp"

using namespace cfa;
using cfa::test::family;

namespace {

const char* kDual = R"(field 2
precision 1
kind algebra
mode exact

[algebra]
basis e:0 t:1
unit e
mul t t = 0
)";

std::string data(const std::string& name) { return std::string(CFA_DATA_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli-ingest") {
    TEST_CASE("minimal algebra") {
        const Presentation p = parse_presentation(kDual);
        CHECK(p.prime == 2);
        CHECK(p.precision == 1);
        CHECK(p.exact == true);
        const LoadedObject o = build_presentation(p);
        CHECK(o.ring->dim() == 2);
        CHECK(o.ring->coords()->exact());
        CHECK(validate(*o.ring).all_passed());
    }

    TEST_CASE("missing unit is reported") {
        std::string text = kDual;
        text.erase(text.find("unit e\n"), 7);
        try {
            (void)build_presentation(parse_presentation(text));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            bool named = false;
            for (const auto& d : e.diagnostics()) named = named || d.message.find("unit") != std::string::npos;
            CHECK(named);
            CHECK(e.kind() == ErrorKind::Data);
        }
    }

    TEST_CASE("diagnostics carry positions") {
        const std::string text = "field 2\nprecision 3\nbogus directive\n[algebra]\nfamily powerseries:1\nprecision 99\n";
        try {
            (void)parse_presentation(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.diagnostics().size() >= 2);
            CHECK(e.diagnostics()[0].line == 3);
            CHECK(e.diagnostics()[0].column >= 1);
            CHECK(e.diagnostics()[0].format().rfind("line 3, column ", 0) == 0);
        }
    }

    TEST_CASE("round trip") {
        for (const char* f : {"dp_deformation.cfa", "dual_numbers.cfa", "skew_chain.cfa", "quotient_extension.cfa"}) {
            std::ifstream in(data(f));
            std::stringstream ss;
            ss << in.rdbuf();
            const Presentation p = parse_presentation(ss.str());
            const std::string once = serialize_presentation(p);
            CHECK(parse_presentation(once) == p);
            CHECK(serialize_presentation(parse_presentation(once)) == once);
        }
        const Presentation p = parse_presentation(kDual);
        CHECK(parse_presentation(serialize_presentation(p)) == p);
    }

    TEST_CASE("family mode conflict") {
        const std::string text = "field 2\nprecision 4\nkind algebra\nmode exact\n[algebra]\nfamily powerseries:2\n";
        CHECK_THROWS_AS(build_presentation(parse_presentation(text)), BadParams);
    }

    TEST_CASE("terms") {
        const std::vector<std::string> names{"x", "y", "x*y", "x^2"};
        const Terms t = parse_terms("x + 2*x*y - y + x - x^2 + x^2", names);
        CHECK(format_terms(t) == "2*x + 2*x*y - y");
        CHECK(format_terms({}) == "0");
        CHECK(parse_terms("0", names).empty());
    }

    TEST_CASE("quotient family F_2[[x,y]]/(xy)") {
        const auto r = family("powerseries:2:x*y", 2, 7);
        const auto h = GradedView::of_ring(r).h();
        CHECK(h[0] == 1);
        for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] == 2);
        CHECK(validate(*r).all_passed());
    }

    TEST_CASE("tower coherence") {
        for (const char* spec : {"powerseries:2", "powerseries:2:x*y", "deformation:2:1", "deformation:3:2"}) {
            for (int N = 2; N <= 5; ++N) {
                const auto upper = family(spec, 3, N);
                const auto lower = family(spec, 3, N - 1);
                CHECK_MESSAGE(tower_coherence(*upper, *lower).coherent, spec, " N=", N);
            }
        }
    }

    TEST_CASE("exit codes") {
        CHECK(run({"validate", data("dp_deformation.cfa")}).code == 0);
        CHECK(run({"validate", data("dual_numbers.cfa")}).code == 0);
        CHECK(run({"validate", data("no_such_file.cfa")}).code == 2);
        CHECK(run({"validate", data("dual_numbers.cfa"), "--family", "powerseries:1"}).code == 2);
        CHECK(run({"--help"}).code == 0);
        CHECK(run({"no-such-command"}).code == 2);
        CHECK(run({"distinguished", data("skew_chain.cfa"), "--element", "m0"}).code == 4);
        CHECK(run({"artin-rees", "--family", "powerseries:2", "--precision", "3", "--ideal", "x^2"}).code == 3);
        CHECK(run({"torsion", "--family", "powerseries:2", "--quotient", "x"}).code == 2);
        CHECK(run({"torsion", "--family", "powerseries:2", "--quotient", "x", "--domain"}).code == 0);
        const Run h = run({"hilbert", "--family", "powerseries:2", "--precision", "8"});
        CHECK(h.code == 0);
        CHECK(h.out.find("delta = 2, alpha = 1/2") != std::string::npos);
    }

    TEST_CASE("determinism") {
        const std::vector<std::vector<std::string>> cmds{
            {"validate", data("dp_deformation.cfa")},
            {"artin-rees", "--family", "powerseries:2", "--precision", "8", "--ideal", "x"},
            {"torsion", data("quotient_extension.cfa"), "--domain", "--seed", "5"},
            {"fuzz", "--count", "4", "--precision", "8", "--seed", "3"},
        };
        for (const auto& c : cmds) {
            const Run a = run(c);
            const Run b = run(c);
            CHECK(a.code == b.code);
            CHECK(a.out == b.out);
        }
    }

    TEST_CASE("report files") {
        const auto dir = std::filesystem::temp_directory_path() / "cfa_cli_ingest_reports";
        std::filesystem::remove_all(dir);
        CHECK(run({"asymptotics", "--family", "powerseries:2", "--precision", "7", "--out", dir.string()}).code == 0);
        bool txt = false, csv = false;
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            txt = txt || e.path().extension() == ".txt";
            csv = csv || e.path().extension() == ".csv";
        }
        CHECK(txt);
        CHECK(csv);
        std::filesystem::remove_all(dir);
    }
}
