#include <doctest.h>

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "genmetrics/cli.hpp"
#include "genmetrics/error.hpp"
#include "genmetrics/image_codec.hpp"
#include "genmetrics/pixelpipe.hpp"
#include "genmetrics/ranking.hpp"
#include "support.hpp"

using namespace genmetrics;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"genmetrics"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json load_json(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
    const auto b = read_file(p);
    return std::string(b.begin(), b.end());
}

PixelBuffer pattern_image(int w, int h, int seed) {
    std::vector<std::uint8_t> v;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) v.push_back(static_cast<std::uint8_t>((x * (7 + seed) + y * (3 + c) + seed * 31) % 256));
    return PixelBuffer::from_u8(w, h, 3, std::move(v));
}

void write_1d(const fs::path& p, std::vector<float> values) {
    const std::size_t n = values.size();
    write_features(p, FeatureSet(n, 1, std::move(values)));
}

}  // namespace

TEST_CASE("reference split declarations") {
    const auto r = cli::parse_reference_split("train:50000");
    CHECK(r.name == "train");
    CHECK(r.count == 50000);
    CHECK_THROWS_AS(cli::parse_reference_split("train"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_reference_split(":10"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_reference_split("test:x"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_reference_split("test:-3"), cli::UsageError);
}

TEST_CASE("config file keys and validation") {
    cli::RunConfig c;
    cli::apply_config_json(c, {{"backbone", "Swin-T"},
                               {"k_pr", 4},
                               {"fractions", {0.5, 1.0}},
                               {"ref_split", "validation:10000"},
                               {"filter", "bicubic"},
                               {"seed", 9}});
    CHECK(c.backbone == "Swin-T");
    CHECK(c.manifold.k_pr == 4);
    CHECK(c.fractions == std::vector<double>{0.5, 1.0});
    CHECK(c.reference->name == "validation");
    CHECK(c.preprocess_filter == FilterKind::Bicubic);
    CHECK(c.seed == 9);
    CHECK_THROWS_AS(cli::apply_config_json(c, {{"bogus", 1}}), cli::UsageError);

    cli::RunConfig bilinear;
    bilinear.preprocess_filter = FilterKind::Bilinear;
    CHECK_THROWS_AS(bilinear.validate(), cli::UsageError);
    cli::RunConfig zero_k;
    zero_k.manifold.k_dc = 0;
    CHECK_THROWS_AS(zero_k.validate(), cli::UsageError);

    cli::RunConfig custom;
    cli::apply_config_json(custom, {{"backbones",
                                     {{{"name", "DINO"},
                                       {"input_resolution", 224},
                                       {"friendly_filter", "Bicubic"},
                                       {"feature_dim", 768}}}}});
    CHECK(custom.registry().find("DINO").input_resolution == 224);
    CHECK(custom.registry().contains("InceptionV3"));
}

TEST_CASE("flags override config values") {
    test_support::TempDir dir("cfg");
    write_1d(dir.path() / "a.gmf1", {0, 1, 2, 3, 4, 5});
    {
        std::ofstream cfg(dir.path() / "run.json");
        cfg << R"({"ref_split": "train:6", "k_pr": 1, "k_dc": 1, "model_name": "from-config"})";
    }
    const auto out = dir.path() / "r.json";
    auto r = run_cli({"metrics", "--config", (dir.path() / "run.json").string(), "--real",
                      (dir.path() / "a.gmf1").string(), "--fake", (dir.path() / "a.gmf1").string(), "--k-dc", "2",
                      "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto j = load_json(out);
    CHECK(j["model_name"] == "from-config");
    CHECK(j["protocol"]["settings"]["k_pr"] == 1);
    CHECK(j["protocol"]["settings"]["k_dc"] == 2);
    CHECK(j["protocol"]["reference_split"] == "train");
}

TEST_CASE("prep writes one PNG per input and a manifest") {
    test_support::TempDir dir("prep");
    const auto in = dir.path() / "in";
    fs::create_directories(in);
    for (int i = 0; i < 10; ++i) save_png(in / ("img" + std::to_string(i) + ".png"), pattern_image(512, 512, i));
    auto r = run_cli({"prep", "--input", in.string(), "--out", (dir.path() / "out").string(), "--resolution", "32"});
    REQUIRE(r.code == 0);
    const auto manifest = load_json(dir.path() / "out" / "manifest.json");
    CHECK(manifest["files"].size() == 10);
    CHECK(manifest["errors"].empty());
    CHECK(manifest["filter"] == "Lanczos");
    CHECK(manifest["resolution"] == 32);
    CHECK(manifest["files"][0]["input"] == "img0.png");
    CHECK(manifest["files"][0]["sha256"].get<std::string>().size() == 64);
    const auto img = load_image(dir.path() / "out" / "img3.png");
    CHECK(img.width() == 32);
    CHECK(img.height() == 32);
    CHECK(img == quantize(normalize(resize(pattern_image(512, 512, 3), 32, 32, FilterKind::Lanczos))));
}

TEST_CASE("prep at the native resolution keeps pixels") {
    test_support::TempDir dir("prep_id");
    const auto in = dir.path() / "in";
    fs::create_directories(in);
    const auto src = pattern_image(24, 24, 5);
    save_png(in / "a.png", src);
    REQUIRE(run_cli({"prep", "--input", in.string(), "--out", (dir.path() / "out").string(), "--resolution", "24",
                     "--filter", "bicubic"})
                .code == 0);
    CHECK(load_image(dir.path() / "out" / "a.png") == src);
}

TEST_CASE("prep reports unreadable files") {
    test_support::TempDir dir("prep_bad");
    const auto in = dir.path() / "in";
    fs::create_directories(in);
    save_png(in / "good.png", pattern_image(16, 16, 1));
    std::ofstream(in / "broken.png") << "not a png";
    std::ofstream(in / "readme.txt") << "ignored";
    const auto r = run_cli({"prep", "--input", in.string(), "--out", (dir.path() / "out").string(), "--resolution", "8"});
    CHECK(r.code == 1);
    const auto manifest = load_json(dir.path() / "out" / "manifest.json");
    CHECK(manifest["files"].size() == 1);
    REQUIRE(manifest["errors"].size() == 1);
    CHECK(manifest["errors"][0]["input"] == "broken.png");
    CHECK(manifest["skipped"][0] == "readme.txt");
}

TEST_CASE("prep refuses a non-antialiasing route-one filter") {
    test_support::TempDir dir("prep_filter");
    CHECK(run_cli({"prep", "--input", dir.path().string(), "--out", (dir.path() / "o").string(), "--resolution", "8",
                   "--filter", "bilinear"})
              .code == 2);
    CHECK(run_cli({"prep", "--input", dir.path().string(), "--out", (dir.path() / "o").string(), "--resolution", "8",
                   "--filter", "nearest"})
              .code == 2);
}

TEST_CASE("prep can emit backbone pixels") {
    test_support::TempDir dir("prep_bb");
    const auto in = dir.path() / "in";
    fs::create_directories(in);
    const auto src = pattern_image(40, 40, 2);
    save_png(in / "a.png", src);
    REQUIRE(run_cli({"prep", "--input", in.string(), "--out", (dir.path() / "out").string(), "--backbone-pixels",
                     "--backbone", "Swin-T"})
                .code == 0);
    const auto img = load_image(dir.path() / "out" / "a.png");
    CHECK(img == backbone_resize(src, BackboneRegistry::builtin().find("Swin-T")));
    CHECK(load_json(dir.path() / "out" / "manifest.json")["filter"] == "Bicubic");
}

TEST_CASE("metrics on identical inputs") {
    test_support::TempDir dir("metrics");
    const auto fs = test_support::gaussian_features(200, 6, 1);
    write_features(dir.path() / "real.gmf1", fs);
    const auto out = dir.path() / "report.json";
    const auto r = run_cli({"metrics", "--real", (dir.path() / "real.gmf1").string(), "--fake",
                            (dir.path() / "real.gmf1").string(), "--ref-split", "train:200", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto j = load_json(out);
    CHECK(validate_report_json(j).empty());
    CHECK(j["entries"]["FID"]["value"].get<double>() <= 1e-6);
    CHECK(j["entries"]["Precision"]["value"] == 1.0);
    CHECK(j["entries"]["Recall"]["value"] == 1.0);
    CHECK(j["entries"]["Coverage"]["value"] == 1.0);
    CHECK(!j["entries"].contains("IS"));
    CHECK(!j["entries"].contains("Top-1 acc."));
    const auto notes = j["notes"].dump();
    CHECK(notes.find("IS omitted") != std::string::npos);
    CHECK(notes.find("accuracy omitted") != std::string::npos);
    CHECK(j["protocol"]["reference_count"] == 200);
    CHECK(j["protocol"]["generated_count"] == 200);
    CHECK(j["protocol"]["resizers_used"]["backbone"] == "Bilinear");
    CHECK(j["protocol"]["friendly_resizer_override"] == false);
    CHECK(r.out.find("FID") != std::string::npos);
}

TEST_CASE("metrics with labels and posteriors") {
    test_support::TempDir dir("metrics_full");
    const std::size_t n = 60;
    const auto base = test_support::gaussian_features(n, 4, 3);
    std::vector<ClassId> labels(n);
    std::vector<float> post(n * 6, 0.0f);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<ClassId>(i % 6);
        post[i * 6 + labels[i]] = 1.0f;
    }
    const FeatureSet labeled(n, 4, {base.values().begin(), base.values().end()}, labels, 6u);
    write_features(dir.path() / "f.gmf1", labeled, PosteriorSet(n, 6, post));
    const auto out = dir.path() / "r.json";
    REQUIRE(run_cli({"metrics", "--real", (dir.path() / "f.gmf1").string(), "--fake", (dir.path() / "f.gmf1").string(),
                     "--ref-split", "train:60", "--backbone", "Swin-T", "--out", out.string(), "--splits", "2"})
                .code == 0);
    const auto j = load_json(out);
    CHECK(j["entries"]["TS"]["value"].get<double>() == doctest::Approx(6.0));
    CHECK(j["entries"]["IFTD"]["value"].get<double>() <= 1e-6);
    CHECK(j["entries"]["Top-1 acc."]["value"] == 1.0);
    CHECK(j["entries"]["Top-5 acc."]["value"] == 1.0);
    CHECK(j["entries"]["T-Precision"]["value"] == 1.0);
    CHECK(j["protocol"]["settings"]["splits"] == 2);
}

TEST_CASE("metrics usage and data errors") {
    test_support::TempDir dir("metrics_err");
    write_features(dir.path() / "a.gmf1", test_support::gaussian_features(20, 2048, 1));
    write_features(dir.path() / "b.gmf1", test_support::gaussian_features(20, 768, 2));
    const auto a = (dir.path() / "a.gmf1").string(), b = (dir.path() / "b.gmf1").string();
    CHECK(run_cli({"metrics", "--real", a, "--fake", a}).code == 2);
    const auto mismatch = run_cli({"metrics", "--real", a, "--fake", b, "--ref-split", "train:20"});
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("D=") != std::string::npos);
    CHECK(run_cli({"metrics", "--real", a, "--fake", a, "--ref-split", "train:20", "--backbone", "DINO"}).code == 2);
    CHECK(run_cli({"metrics", "--real", a, "--fake", (dir.path() / "missing.gmf1").string(), "--ref-split", "t:1"})
              .code == 1);
    CHECK(run_cli({"metrics", "--real", a}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("resizer override is echoed into the report") {
    test_support::TempDir dir("override");
    write_features(dir.path() / "a.gmf1", test_support::gaussian_features(30, 3, 1));
    const auto a = (dir.path() / "a.gmf1").string();
    const auto out = dir.path() / "r.json";
    const auto r = run_cli({"metrics", "--real", a, "--fake", a, "--ref-split", "train:30", "--backbone", "Swin-T",
                            "--override-friendly-resizer", "bilinear", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto j = load_json(out);
    CHECK(j["protocol"]["friendly_resizer_override"] == true);
    CHECK(j["protocol"]["resizers_used"]["backbone"] == "Bilinear");
    CHECK(j["notes"].dump().find("nonstandard evaluation") != std::string::npos);
    CHECK(r.err.find("nonstandard evaluation") != std::string::npos);
}

TEST_CASE("count mismatch warns unless acknowledged") {
    test_support::TempDir dir("count");
    write_features(dir.path() / "a.gmf1", test_support::gaussian_features(30, 3, 1));
    write_features(dir.path() / "b.gmf1", test_support::gaussian_features(40, 3, 2));
    const auto a = (dir.path() / "a.gmf1").string(), b = (dir.path() / "b.gmf1").string();
    CHECK(run_cli({"metrics", "--real", a, "--fake", b, "--ref-split", "train:30"}).err.find("generated count") !=
          std::string::npos);
    CHECK(run_cli({"metrics", "--real", a, "--fake", b, "--ref-split", "train:30", "--allow-count-mismatch"})
              .err.find("generated count") == std::string::npos);
}

TEST_CASE("metrics output is byte reproducible") {
    test_support::TempDir dir("repro");
    write_features(dir.path() / "a.gmf1", test_support::gaussian_features(120, 5, 1));
    write_features(dir.path() / "b.gmf1", test_support::gaussian_features(120, 5, 2, 0.5));
    const auto a = (dir.path() / "a.gmf1").string(), b = (dir.path() / "b.gmf1").string();
    REQUIRE(run_cli({"metrics", "--real", a, "--fake", b, "--ref-split", "train:120", "--out",
                     (dir.path() / "1.json").string()})
                .code == 0);
    REQUIRE(run_cli({"metrics", "--real", a, "--fake", b, "--ref-split", "train:120", "--out",
                     (dir.path() / "2.json").string()})
                .code == 0);
    CHECK(slurp(dir.path() / "1.json") == slurp(dir.path() / "2.json"));
}

TEST_CASE("compare ranks the closed-form targets") {
    test_support::TempDir dir("compare");
    // Source: mean 0, variance 1. far: mean 3, variance 4 (FD 10). near: mean
    // 1, variance 4 (FD 2). copy: the source itself (FD 0).
    write_1d(dir.path() / "source.gmf1", {-1, 0, 1});
    write_1d(dir.path() / "far.gmf1", {1, 3, 5});
    write_1d(dir.path() / "near.gmf1", {-1, 1, 3});
    const auto out = dir.path() / "out";
    const auto r = run_cli({"compare", "--source", (dir.path() / "source.gmf1").string(), "--target",
                            (dir.path() / "far.gmf1").string(), "--target", (dir.path() / "near.gmf1").string(),
                            "--k-pr", "1", "--k-dc", "1", "--fractions", "1.0", "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(load_json(out / "reports" / "far.json")["entries"]["FID"]["value"].get<double>() == doctest::Approx(10.0));
    CHECK(load_json(out / "reports" / "near.json")["entries"]["FID"]["value"].get<double>() == doctest::Approx(2.0));
    const auto table = ranking_from_json(load_json(out / "ranking.json"));
    CHECK(table.rows[0].model_name == "near");
    CHECK(table.rows[0].ranks.at("FID") == 1);
    CHECK(fs::exists(out / "curves" / "real_to_real.csv"));
    CHECK(fs::exists(out / "curves" / "relative_fd_far.json"));
    CHECK(fs::exists(out / "ranking.csv"));
    CHECK(fs::exists(out / "compare.json"));

    const auto out2 = dir.path() / "out2";
    REQUIRE(run_cli({"compare", "--source", (dir.path() / "source.gmf1").string(), "--target",
                     (dir.path() / "far.gmf1").string(), "--target", (dir.path() / "source.gmf1").string(), "--k-pr",
                     "1", "--k-dc", "1", "--fractions", "1.0", "--out", out2.string()})
                .code == 0);
    const auto t2 = ranking_from_json(load_json(out2 / "ranking.json"));
    CHECK(t2.rows[0].model_name == "source");
    for (const auto& [metric, rank] : t2.rows[0].ranks)
        if (t2.directions.at(metric) == Direction::LowerBetter) CHECK(rank == 1);
    CHECK(load_json(out2 / "reports" / "source.json")["entries"]["FID"]["value"].get<double>() <= 1e-12);
    CHECK(load_json(out2 / "compare.json")["targets"][1]["relative_fd_curve"].is_null());
}

TEST_CASE("compare without targets is a usage error") {
    test_support::TempDir dir("compare_empty");
    write_1d(dir.path() / "s.gmf1", {0, 1, 2});
    CHECK(run_cli({"compare", "--source", (dir.path() / "s.gmf1").string(), "--out", dir.path().string()}).code == 2);
}

TEST_CASE("report re-renders stored documents") {
    test_support::TempDir dir("report");
    write_features(dir.path() / "a.gmf1", test_support::gaussian_features(30, 3, 1));
    const auto a = (dir.path() / "a.gmf1").string();
    const auto rep = dir.path() / "r.json";
    REQUIRE(run_cli({"metrics", "--real", a, "--fake", a, "--ref-split", "test:30", "--out", rep.string()}).code == 0);
    const auto csv = run_cli({"report", "--in", rep.string(), "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("FID") != std::string::npos);
    const auto json = run_cli({"report", "--in", rep.string(), "--format", "json"});
    CHECK(nlohmann::json::parse(json.out) == load_json(rep));
    CHECK(run_cli({"report", "--in", rep.string(), "--validate"}).code == 0);

    auto broken = load_json(rep);
    broken["entries"]["FID"]["direction"] = "higher_better";
    std::ofstream(dir.path() / "bad.json") << broken.dump();
    CHECK(run_cli({"report", "--in", (dir.path() / "bad.json").string(), "--validate"}).code == 1);
    CHECK(run_cli({"report", "--in", rep.string(), "--format", "xml"}).code == 2);
    CHECK(run_cli({"report"}).code == 2);
}

TEST_CASE("registry export is loadable") {
    const auto r = run_cli({"report", "--export-registry"});
    REQUIRE(r.code == 0);
    const auto reg = BackboneRegistry::from_json(nlohmann::json::parse(r.out));
    CHECK(reg.specs() == BackboneRegistry::builtin().specs());
}

TEST_CASE("a class too small for IFID omits only that metric") {
    test_support::TempDir dir("thin_class");
    const auto base = test_support::gaussian_features(20, 3, 1);
    std::vector<ClassId> labels(20, 0);
    labels[7] = 1;
    write_features(dir.path() / "a.gmf1", FeatureSet(20, 3, {base.values().begin(), base.values().end()}, labels));
    const auto out = dir.path() / "r.json";
    const auto a = (dir.path() / "a.gmf1").string();
    REQUIRE(run_cli({"metrics", "--real", a, "--fake", a, "--ref-split", "train:20", "--out", out.string()}).code == 0);
    const auto j = load_json(out);
    CHECK(!j["entries"].contains("IFID"));
    CHECK(j["entries"].contains("FID"));
    CHECK(j["notes"].dump().find("IFID omitted") != std::string::npos);
    CHECK(j["notes"].dump().find("class 1") != std::string::npos);
}
