#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "bicohom/cli.hpp"

using namespace bicohom;
using cli::Outcome;
using nlohmann::json;

namespace {

const std::string source_dir = BICOHOM_SOURCE_DIR;

Outcome run(std::vector<std::string> args) { return cli::run(args); }

std::string sample(const std::string& name) { return source_dir + "/samples/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto dir = std::filesystem::temp_directory_path() / "bicohom_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::vector<std::size_t> flat(const std::vector<std::vector<std::size_t>>& g) {
    std::vector<std::size_t> out;
    for (const auto& r : g) out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::vector<std::size_t> dims_of(const json& table) {
    std::vector<std::size_t> out;
    for (const auto& e : table) out.push_back(e["dim"].get<std::size_t>());
    return out;
}

} // namespace

TEST(CliExitCodes, MalformedInputs) {
    EXPECT_EQ(run({"cohomology", "--input", "builtin:nope"}).code, 1);
    EXPECT_EQ(run({"cohomology", "--input", "builtin:heisenberg"}).code, 1);
    EXPECT_EQ(run({"cohomology", "--input", "/definitely/missing.json"}).code, 1);
    EXPECT_EQ(run({"cohomology"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bogus", "--input", "builtin:torus:1"}).code, 1);
    EXPECT_EQ(run({"cohomology", "--input", "builtin:torus:1", "--bogus"}).code, 1);
    // flags belong to their command only
    EXPECT_EQ(run({"cohomology", "--input", "builtin:torus:1", "--page", "2"}).code, 1);
    EXPECT_EQ(run({"zigzag", "--input", "builtin:torus:1", "--classes", "1:1"}).code, 1);
}

TEST(CliExitCodes, ParseAndSchemaErrorsCarryLocation) {
    Outcome bad_json = run({"validate", "--input", write_temp("bad.json", "{\"schema_version\": 1,").string()});
    EXPECT_EQ(bad_json.code, 1);
    EXPECT_NE(bad_json.err.find("ParseError"), std::string::npos);
    EXPECT_NE(bad_json.err.find("byte"), std::string::npos);

    Outcome bad_scalar = run({"validate", "--input",
                              write_temp("scalar.json", R"({"schema_version":1,"type":"real","n":3,
                                   "brackets":[{"i":1,"j":2,"k":3,"c":"1/x"}]})")
                                  .string()});
    EXPECT_EQ(bad_scalar.code, 1);
    EXPECT_NE(bad_scalar.err.find("/brackets/0/c"), std::string::npos);

    Outcome unknown_key = run({"validate", "--input",
                               write_temp("key.json", R"({"schema_version":1,"type":"real","n":1,"brackets":[],"extra":0})")
                                   .string()});
    EXPECT_EQ(unknown_key.code, 1);
    EXPECT_NE(unknown_key.err.find("SchemaError"), std::string::npos);
    EXPECT_NE(unknown_key.err.find("extra"), std::string::npos);

    EXPECT_EQ(run({"validate", "--input", write_temp("nov.json", R"({"type":"real","n":1,"brackets":[]})").string()}).code, 1);
    EXPECT_EQ(run({"validate", "--input",
                   write_temp("v2.json", R"({"schema_version":2,"type":"real","n":1,"brackets":[]})").string()})
                  .code,
              1);
    EXPECT_EQ(run({"validate", "--input",
                   write_temp("irr.json", R"({"schema_version":1,"type":"real","n":2,
                        "brackets":[{"i":1,"j":2,"k":1,"c":"1/2 i"}]})")
                       .string()})
                  .code,
              1);
}

TEST(CliExitCodes, ValidationFailures) {
    Outcome v = run({"validate", "--input", sample("not-anticommuting.json")});
    EXPECT_EQ(v.code, 2);
    EXPECT_NE(v.out.find("[fail] del delbar + delbar del = 0: fails at (0,0)"), std::string::npos);
    EXPECT_EQ(run({"cohomology", "--input", sample("not-anticommuting.json")}).code, 2);

    Outcome nj = run({"validate", "--input", sample("broken-j.json")});
    EXPECT_EQ(nj.code, 2);
    EXPECT_NE(nj.out.find("N_J(e1,e2) != 0"), std::string::npos);
    EXPECT_EQ(run({"cohomology", "--input", sample("broken-j.json")}).code, 2);

    auto jacobi = write_temp("jacobi.json", R"({"schema_version":1,"type":"real","n":3,
        "brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":2,"j":3,"k":2,"c":"1"}]})");
    EXPECT_EQ(run({"validate", "--input", jacobi.string()}).code, 2);
    EXPECT_EQ(run({"central-series", "--input", jacobi.string()}).code, 2);

    auto not_acs = write_temp("acs.json", R"({"schema_version":1,"type":"real","n":2,"brackets":[],
        "J":[["1","0"],["0","1"]]})");
    Outcome a = run({"cohomology", "--input", not_acs.string(), "--json"});
    EXPECT_EQ(a.code, 2);
    EXPECT_EQ(json::parse(a.out)["error"]["code"], "NotAlmostComplex");
}

TEST(CliCommands, TorusOneCohomology) {
    Outcome o = run({"cohomology", "--input", "builtin:torus:1"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("  1 | 1 1\n  0 | 1 1\n"), std::string::npos);
    EXPECT_NE(o.out.find("Delta_k = h^k_BC + h^k_A - 2 b_k: 0 0 0\n"), std::string::npos);
    EXPECT_NE(o.out.find("note: Lie-algebra input"), std::string::npos);
}

TEST(CliCommands, BannerOnlyForLieInputs) {
    EXPECT_EQ(run({"cohomology", "--input", sample("square.json")}).out.find("note:"), std::string::npos);
    EXPECT_NE(run({"cohomology", "--input", sample("kodaira-thurston.json")}).out.find("note:"), std::string::npos);
    EXPECT_FALSE(json::parse(run({"cohomology", "--input", sample("square.json"), "--json"}).out).contains("hypothesis"));
}

TEST(CliCommands, IwasawaDdbarLine) {
    Outcome o = run({"ddbar", "--input", "builtin:iwasawa"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "ddbar-lemma: NO; Delta = [0, 2, 6, 8, 6, 2, 0]");
    EXPECT_EQ(run({"ddbar", "--input", "builtin:torus:2"}).out, "ddbar-lemma: YES; Delta = [0, 0, 0, 0, 0]\n");
}

TEST(CliCommands, IwasawaJsonMatchesOracle) {
    Outcome o = run({"cohomology", "--input", "builtin:iwasawa", "--json"});
    ASSERT_EQ(o.code, 0);
    json j = json::parse(o.out);
    EXPECT_EQ(j["betti"].get<std::vector<std::size_t>>(), (std::vector<std::size_t>{1, 4, 8, 10, 8, 4, 1}));
    EXPECT_EQ(dims_of(j["dolbeault"]), flat({{1, 2, 2, 1}, {3, 6, 6, 3}, {3, 6, 6, 3}, {1, 2, 2, 1}}));
    EXPECT_EQ(dims_of(j["conj_dolbeault"]), flat({{1, 3, 3, 1}, {2, 6, 6, 2}, {2, 6, 6, 2}, {1, 3, 3, 1}}));
    EXPECT_EQ(dims_of(j["bott_chern"]), flat({{1, 2, 3, 1}, {2, 4, 6, 2}, {3, 6, 8, 3}, {1, 2, 3, 1}}));
    EXPECT_EQ(dims_of(j["aeppli"]), flat({{1, 3, 2, 1}, {3, 8, 6, 3}, {2, 6, 4, 2}, {1, 3, 2, 1}}));
    EXPECT_EQ(j["delta"].get<std::vector<long>>(), (std::vector<long>{0, 2, 6, 8, 6, 2, 0}));
    // sorted by p, then q
    for (std::size_t i = 0; i < j["bott_chern"].size(); ++i) {
        EXPECT_EQ(j["bott_chern"][i]["p"], static_cast<int>(i / 4));
        EXPECT_EQ(j["bott_chern"][i]["q"], static_cast<int>(i % 4));
    }
}

TEST(CliCommands, GoldenFiles) {
    for (const auto& [args, file] : std::vector<std::pair<std::vector<std::string>, std::string>>{
             {{"cohomology", "--input", "builtin:iwasawa", "--json"}, "iwasawa_cohomology.json"},
             {{"cohomology", "--input", "builtin:iwasawa"}, "iwasawa_cohomology.txt"},
             {{"frolicher", "--input", "builtin:iwasawa"}, "iwasawa_frolicher.txt"},
             {{"zigzag", "--input", "builtin:iwasawa"}, "iwasawa_zigzag.txt"},
             {{"massey", "--input", "builtin:heisenberg", "--classes", "1:1,1:1,1:2"}, "heisenberg_massey.txt"}}) {
        EXPECT_EQ(run(args).out, slurp(source_dir + "/tests/golden/" + file)) << file;
    }
}

TEST(CliCommands, Torus2DolbeaultGrid) {
    Outcome o = run({"cohomology", "--input", "builtin:torus:2"});
    EXPECT_NE(o.out.find("Dolbeault h^{p,q}\n  q\n  2 | 1 2 1\n  1 | 2 4 2\n  0 | 1 2 1\n    +------\n      0 1 2  p\n"),
              std::string::npos);
}

TEST(CliCommands, EveryCommandOnEveryLieBuiltin) {
    for (const char* name : {"iwasawa", "iwasawa-real", "kodaira-thurston", "torus:2"})
        for (const auto& c : cli::commands()) {
            Outcome o = run({c, "--input", std::string("builtin:") + name});
            EXPECT_EQ(o.code, 0) << c << " " << name << ": " << o.err;
            EXPECT_TRUE(o.err.empty());
            EXPECT_TRUE(std::all_of(o.out.begin(), o.out.end(), [](char ch) {
                return ch == '\n' || (ch >= 0x20 && ch < 0x7f);
            })) << "non-ASCII output from " << c;
        }
}

TEST(CliCommands, MasseyByCoordinates) {
    Outcome o = run({"massey", "--input", "builtin:heisenberg", "--json", "--classes",
                     R"([{"degree":1,"coords":["1","0"]},{"degree":1,"coords":["1","0"]},{"degree":1,"coords":["0","1"]}])"});
    ASSERT_EQ(o.code, 0) << o.err;
    json j = json::parse(o.out);
    EXPECT_TRUE(j["defined"].get<bool>());
    EXPECT_FALSE(j["vanishes"].get<bool>());
    EXPECT_EQ(j["representative"], "-e1^e3");
    EXPECT_EQ(run({"massey", "--input", "builtin:heisenberg", "--classes", "1:1,1:1,1:1,1:2"}).code, 1);
    EXPECT_EQ(run({"massey", "--input", "builtin:heisenberg", "--classes", "1:3,1:1,1:2"}).code, 1);
    EXPECT_EQ(run({"massey", "--input", sample("square.json")}).code, 1);
}

TEST(CliCommands, MasseyScanOnTori) {
    for (int n = 1; n <= 3; ++n) {
        Outcome o = run({"massey", "--input", "builtin:torus:" + std::to_string(n), "--json"});
        EXPECT_TRUE(json::parse(o.out)["witnesses"].empty());
    }
}

TEST(CliCommands, ColorOnlyWhenStyled) {
    auto args = std::vector<std::string>{"cohomology", "--input", "builtin:torus:1"};
    EXPECT_EQ(cli::run(args).out.find('\x1b'), std::string::npos);
    EXPECT_NE(cli::run(args, true).out.find("\x1b[1m"), std::string::npos);
    args.push_back("--json");
    EXPECT_EQ(cli::run(args, true).out.find('\x1b'), std::string::npos);
}

TEST(CliProperties, Deterministic) {
    for (const auto& c : cli::commands())
        for (bool as_json : {false, true}) {
            std::vector<std::string> args{c, "--input", "builtin:kodaira-thurston"};
            if (as_json) args.push_back("--json");
            Outcome a = run(args), b = run(args);
            EXPECT_EQ(a.out, b.out);
            EXPECT_EQ(a.code, b.code);
        }
}

TEST(CliProperties, BuiltinRoundTrip) {
    for (const char* name : {"iwasawa", "iwasawa-real", "kodaira-thurston", "heisenberg", "torus:1", "torus:3"}) {
        Presentation p = builtin(name);
        const std::string text = io::to_json(p).dump(2);
        EXPECT_EQ(io::parse(text), p) << name;
        std::string stem = name;
        std::replace(stem.begin(), stem.end(), ':', '_');
        auto file = write_temp(stem + ".json", text);
        for (const auto& c : cli::commands()) {
            if (c == "massey" && std::string(name) == "torus:3") continue;
            for (bool as_json : {false, true}) {
                std::vector<std::string> a{c, "--input", std::string("builtin:") + name}, b{c, "--input", file.string()};
                if (as_json) {
                    a.push_back("--json");
                    b.push_back("--json");
                }
                Outcome x = run(a), y = run(b);
                EXPECT_EQ(x.code, y.code) << c << " " << name;
                if (as_json && x.code == 0) {
                    json jx = json::parse(x.out), jy = json::parse(y.out);
                    jx.erase("input");
                    jy.erase("input");
                    EXPECT_EQ(jx, jy) << c << " " << name;
                } else {
                    EXPECT_EQ(x.out, y.out) << c << " " << name;
                }
            }
        }
    }
}

TEST(CliProperties, ScalarsSerializedAsFractions) {
    json j = io::to_json(builtin("iwasawa"));
    EXPECT_EQ(j["d"][0]["terms"][0]["c"], "-1/1");
    EXPECT_EQ(io::scalar_text(Scalar(Rational(1, 2), Rational(-3))), "1/2-3/1 i");
    EXPECT_EQ(io::scalar_text(Scalar(Rational(0), Rational(2, 3))), "2/3 i");
    Bicomplex b(1, 1, {1, 1, 1, 0});
    b.set_delbar(0, 0, QMatrix{{Scalar(Rational(1, 2), Rational(1, 2))}});
    Presentation p{b};
    EXPECT_EQ(io::parse(io::to_json(p).dump()), p);
}

TEST(CliProperties, SamplesRoundTrip) {
    for (const char* f : {"iwasawa.json", "kodaira-thurston.json", "heisenberg.json", "broken-j.json", "square.json",
                          "zigzag.json", "not-anticommuting.json"}) {
        Presentation p = io::load(sample(f));
        EXPECT_EQ(io::parse(io::to_json(p).dump()), p) << f;
    }
    EXPECT_EQ(io::load(sample("iwasawa.json")), builtin("iwasawa"));
    EXPECT_EQ(io::load(sample("kodaira-thurston.json")), builtin("kodaira-thurston"));
}

TEST(CliBinary, ExitStatusAndStreams) {
    const std::string exe = BICOHOM_CLI;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("cohomology --input builtin:torus:1"), 0);
    EXPECT_EQ(status("cohomology --input builtin:nope"), 1);
    EXPECT_EQ(status("validate --input " + sample("not-anticommuting.json")), 2);
    EXPECT_EQ(status("--help"), 0);
}
