#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace qillqa;
using testsup::RunResult;
using testsup::TempDir;
using testsup::run_cli;

namespace {

bool cli_available() {
    if (!testsup::cli_path().empty())
        return true;
    MESSAGE("QILLQA_CLI not set; skipping CLI test");
    return false;
}

} // namespace

TEST_CASE("analyze counts a trivial corpus") {
    if (!cli_available())
        return;
    TempDir dir("analyze");
    testsup::write_file(dir.sub("corpus.txt"), "aaa");
    const auto run = run_cli("analyze " + dir.sub("corpus.txt") +
                                 " --profile quechua --mode char --out " + dir.sub("out"),
                             dir);
    REQUIRE(run.exit_code == 0);
    const auto table = load_table_file(dir.sub("out") + "/unigrams.json");
    CHECK(table.counts == std::map<Grapheme, std::uint64_t>{{"a", 3}});
    CHECK(run.out.find("'a'") != std::string::npos); // top-20 listing
}

TEST_CASE("analyze lowercases per the char-mode contract") {
    if (!cli_available())
        return;
    TempDir dir("analyze_case");
    testsup::write_file(dir.sub("corpus.txt"), "AbA b!");
    const auto run = run_cli("analyze " + dir.sub("corpus.txt") +
                                 " --profile english --mode char --out " + dir.sub("out"),
                             dir);
    REQUIRE(run.exit_code == 0);
    const auto table = load_table_file(dir.sub("out") + "/unigrams.json");
    CHECK(table.count("a") == 2);
    CHECK(table.count("b") == 2);
    CHECK(table.count("!") == 1);
    CHECK(table.count(" ") == 1);
    CHECK(table.count("A") == 0);
}

TEST_CASE("analyze error paths carry distinct exit codes") {
    if (!cli_available())
        return;
    TempDir dir("analyze_err");

    SUBCASE("missing input file -> io error") {
        const auto run = run_cli("analyze " + dir.sub("nope.txt") +
                                     " --profile quechua --mode char --out " +
                                     dir.sub("out"),
                                 dir);
        CHECK(run.exit_code == 5);
        CHECK(run.err.find("nope.txt") != std::string::npos);
    }
    SUBCASE("invalid utf-8 -> parse error with byte offset") {
        testsup::write_file(dir.sub("bad.txt"), std::string("ok\xfe") + "then");
        const auto run = run_cli("analyze " + dir.sub("bad.txt") +
                                     " --profile quechua --mode char --out " +
                                     dir.sub("out"),
                                 dir);
        CHECK(run.exit_code == 2);
        CHECK(run.err.find("byte offset 2") != std::string::npos);
    }
    SUBCASE("bad flag -> usage error") {
        const auto run = run_cli("analyze --nonsense", dir);
        CHECK(run.exit_code == 64);
    }
    SUBCASE("unknown mode -> usage error") {
        testsup::write_file(dir.sub("c.txt"), "a");
        const auto run = run_cli("analyze " + dir.sub("c.txt") +
                                     " --mode words --out " + dir.sub("out"),
                                 dir);
        CHECK(run.exit_code == 64);
    }
}

TEST_CASE("analyze reproduces the committed golden tables byte-for-byte") {
    if (!cli_available())
        return;
    const std::string corpus = testsup::data_dir() + "/corpus_sample.txt";
    for (const std::string mode : {"char", "grapheme"}) {
        TempDir dir("golden_" + mode);
        const auto run = run_cli("analyze " + corpus + " --profile quechua --mode " +
                                     mode + " --out " + dir.sub("out"),
                                 dir);
        REQUIRE(run.exit_code == 0);
        for (const std::string table : {"unigrams", "bigrams"}) {
            const auto golden = testsup::read_file(testsup::data_dir() + "/golden/" +
                                                   mode + "_" + table + ".json");
            const auto produced = testsup::read_file(dir.sub("out") + "/" + table + ".json");
            REQUIRE_FALSE(golden.empty());
            CHECK_MESSAGE(produced == golden, "golden mismatch for ", mode, "/", table);
        }
    }
}

TEST_CASE("optimize with a zero budget returns the baseline layout") {
    if (!cli_available())
        return;
    TempDir dir("opt_zero");
    const auto run = run_cli(
        "optimize --freq builtin:quechua --mode qwerty-delta --max-moves 0 --out " +
            dir.sub("out"),
        dir);
    REQUIRE(run.exit_code == 0);
    auto produced = load_layout_file(dir.sub("out") + "/layout.json");
    const auto base = builtin_layout("qwerty-latam");
    CHECK(produced.assignment == base.assignment);
    CHECK(run.out.find("moves from base: 0") != std::string::npos);
}

TEST_CASE("optimize outputs are byte-identical across reruns") {
    if (!cli_available())
        return;
    TempDir dir("opt_idem");
    const std::string args =
        "optimize --freq builtin:quechua --mode qwerty-delta --out ";
    REQUIRE(run_cli(args + dir.sub("a"), dir).exit_code == 0);
    REQUIRE(run_cli(args + dir.sub("b"), dir).exit_code == 0);
    CHECK(testsup::read_file(dir.sub("a") + "/layout.json") ==
          testsup::read_file(dir.sub("b") + "/layout.json"));
    CHECK(testsup::read_file(dir.sub("a") + "/report.json") ==
          testsup::read_file(dir.sub("b") + "/report.json"));
}

TEST_CASE("evaluate prints the metrics table and coverage warnings") {
    if (!cli_available())
        return;
    TempDir dir("eval");

    const auto run = run_cli(
        "evaluate --layout builtin:qwerty-latam --freq builtin:quechua --out " +
            dir.sub("metrics.json"),
        dir);
    REQUIRE(run.exit_code == 0);
    CHECK(run.out.find("home row usage") != std::string::npos);
    CHECK(run.out.find("%") != std::string::npos);
    const auto metrics = load_metrics_file(dir.sub("metrics.json"));
    CHECK(metrics.total_effort > 0.0);

    // dvorak-en cannot type ñ: expect a warning line and unassigned mass
    const auto dvorak = run_cli(
        "evaluate --layout builtin:dvorak-en --freq builtin:quechua --out " +
            dir.sub("dvorak.json"),
        dir);
    REQUIRE(dvorak.exit_code == 0);
    CHECK(dvorak.out.find("warning") != std::string::npos);
    CHECK(dvorak.out.find("ñ") != std::string::npos);
    CHECK(load_metrics_file(dir.sub("dvorak.json")).unassigned_mass > 0.0);
}

TEST_CASE("compare of identical metrics is all zeros") {
    if (!cli_available())
        return;
    TempDir dir("cmp");
    REQUIRE(run_cli("evaluate --layout builtin:qwerty-latam --freq builtin:quechua "
                    "--out " + dir.sub("m.json"),
                    dir)
                .exit_code == 0);
    const auto cmp =
        run_cli("compare " + dir.sub("m.json") + " " + dir.sub("m.json"), dir);
    REQUIRE(cmp.exit_code == 0);
    CHECK(cmp.out.find("effort reduction: 0.0%") != std::string::npos);
}

TEST_CASE("compare negates when arguments swap") {
    if (!cli_available())
        return;
    TempDir dir("cmp_swap");
    REQUIRE(run_cli("evaluate --layout builtin:qwerty-latam --freq builtin:quechua "
                    "--out " + dir.sub("a.json"),
                    dir)
                .exit_code == 0);
    REQUIRE(run_cli("evaluate --layout builtin:dvorak-en --freq builtin:quechua "
                    "--out " + dir.sub("b.json"),
                    dir)
                .exit_code == 0);
    const auto ab = run_cli("compare " + dir.sub("a.json") + " " + dir.sub("b.json") +
                                " --out " + dir.sub("ab.json"),
                            dir);
    const auto ba = run_cli("compare " + dir.sub("b.json") + " " + dir.sub("a.json") +
                                " --out " + dir.sub("ba.json"),
                            dir);
    REQUIRE(ab.exit_code == 0);
    REQUIRE(ba.exit_code == 0);

    const auto a = load_metrics_file(dir.sub("a.json"));
    const auto b = load_metrics_file(dir.sub("b.json"));
    const double ab_pct = 100.0 * (a.total_effort - b.total_effort) / a.total_effort;
    const double ba_pct = 100.0 * (b.total_effort - a.total_effort) / b.total_effort;
    // relative percentages negate up to the change of base
    CHECK(ab_pct * ba_pct <= 0.0);
}

TEST_CASE("compare with a zero baseline fails validation") {
    if (!cli_available())
        return;
    TempDir dir("cmp_zero");
    testsup::write_file(dir.sub("zero.json"), R"({"total_effort": 0.0,
        "row_usage": {"top": 0, "home": 0, "bottom": 0},
        "same_finger_fraction": 0, "hand_alternation_fraction": 0,
        "unassigned_mass": 1.0})");
    REQUIRE(run_cli("evaluate --layout builtin:qwerty-latam --freq builtin:quechua "
                    "--out " + dir.sub("m.json"),
                    dir)
                .exit_code == 0);
    const auto run =
        run_cli("compare " + dir.sub("zero.json") + " " + dir.sub("m.json"), dir);
    CHECK(run.exit_code == 3);
}

TEST_CASE("export writes the generic layout document") {
    if (!cli_available())
        return;
    TempDir dir("export");
    const auto run = run_cli(
        "export --layout builtin:dvorak-en --out " + dir.sub("dvorak.json"), dir);
    REQUIRE(run.exit_code == 0);
    const auto layout = load_layout_file(dir.sub("dvorak.json"));
    CHECK(layout == builtin_layout("dvorak-en"));
}

TEST_CASE("heatmap text output is deterministic") {
    if (!cli_available())
        return;
    TempDir dir("heat_text");
    const std::string args =
        "heatmap --layout builtin:qwerty-latam --freq builtin:quechua --style text --out ";
    REQUIRE(run_cli(args + dir.sub("a.txt"), dir).exit_code == 0);
    REQUIRE(run_cli(args + dir.sub("b.txt"), dir).exit_code == 0);
    const auto a = testsup::read_file(dir.sub("a.txt"));
    CHECK(a == testsup::read_file(dir.sub("b.txt")));
    CHECK(a.find("home") != std::string::npos);
    CHECK(a.find('%') != std::string::npos);
}

TEST_CASE("heatmap svg shading follows the frequency weights") {
    if (!cli_available())
        return;
    TempDir dir("heat_svg");

    const auto count_occurrences = [](const std::string& text, const std::string& needle) {
        std::size_t count = 0;
        for (std::size_t pos = text.find(needle); pos != std::string::npos;
             pos = text.find(needle, pos + needle.size()))
            ++count;
        return count;
    };

    SUBCASE("single grapheme: exactly one shaded cell") {
        FrequencyTable freq;
        freq.add("q", 5);
        save_table_file(freq, dir.sub("single.json"));
        const auto run = run_cli("heatmap --layout builtin:qwerty-latam --freq " +
                                     dir.sub("single.json") + " --style svg --out " +
                                     dir.sub("single.svg"),
                                 dir);
        REQUIRE(run.exit_code == 0);
        const auto svg = testsup::read_file(dir.sub("single.svg"));
        CHECK(count_occurrences(svg, "fill-opacity=\"1.0000\"") == 1);
        CHECK(count_occurrences(svg, "fill-opacity=\"0.0000\"") == 31);
    }
    SUBCASE("uniform frequencies: all assigned cells equally shaded") {
        FrequencyTable freq;
        const auto layout = builtin_layout("qwerty-latam");
        for (const auto& [g, slot] : layout.assignment)
            freq.add(g, 3);
        save_table_file(freq, dir.sub("uniform.json"));
        const auto run = run_cli("heatmap --layout builtin:qwerty-latam --freq " +
                                     dir.sub("uniform.json") + " --style svg --out " +
                                     dir.sub("uniform.svg"),
                                 dir);
        REQUIRE(run.exit_code == 0);
        const auto svg = testsup::read_file(dir.sub("uniform.svg"));
        CHECK(count_occurrences(svg, "fill-opacity=\"1.0000\"") ==
              layout.assignment.size());
    }
}
