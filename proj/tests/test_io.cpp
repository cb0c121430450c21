#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "kf/io.hpp"

#include "support.hpp"

using namespace kf;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path p = fs::temp_directory_path() / "kf_io_test";
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("measure json round-trips bit-exactly") {
    // positions/weights with no short decimal representation
    AtomicMeasure m({{1.0 / 3.0, 2.0 / 7.0}, {0.123456789012345678, 5.0 / 7.0}});
    const io::json j = io::measure_to_json(m);
    const Measure back = io::measure_from_json(io::json::parse(j.dump()));
    REQUIRE(std::holds_alternative<AtomicMeasure>(back));
    CHECK(std::get<AtomicMeasure>(back) == m);

    const io::json j2 = io::measure_to_json(Measure(mu3()));
    const Measure back2 = io::measure_from_json(io::json::parse(j2.dump()));
    REQUIRE(std::holds_alternative<SelfSimilarMeasure>(back2));
    CHECK(std::get<SelfSimilarMeasure>(back2).id() == mu3().id());
}

TEST_CASE("measure json rejects malformed input") {
    CHECK_THROWS_AS(io::measure_from_json(io::json::parse(R"({"atoms":[]})")),
                    validation_error);
    CHECK_THROWS_AS(io::measure_from_json(io::json::parse(R"({"type":"nope"})")),
                    validation_error);
    CHECK_THROWS_AS(
        io::measure_from_json(io::json::parse(
            R"({"type":"atomic","atoms":[{"x":0.1,"w":1.0}],"extra":1})")),
        validation_error);
    CHECK_THROWS_AS(
        io::measure_from_json(io::json::parse(
            R"({"type":"atomic","atoms":[{"x":0.1,"w":1.0,"q":2}]})")),
        validation_error);
    CHECK_THROWS_AS(
        io::measure_from_json(io::json::parse(R"({"type":"ifs","R":3,"digits":[0,2]})")),
        validation_error);
}

TEST_CASE("function files: explicit values and generators") {
    AtomicMeasure two({{0.0, 0.5}, {0.5, 0.5}});

    const auto f = io::function_from_json(
        io::json::parse(R"([{"re":1,"im":0},{"re":-1,"im":0}])"), two);
    CHECK(f.values()[0] == cplx(1.0));
    CHECK(f.values()[1] == cplx(-1.0));

    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"([{"re":1,"im":0}])"), two),
                    validation_error);

    const auto e1 = io::function_from_json(io::json::parse(R"("exp_1")"), two);
    CHECK(kftest::max_abs_diff(e1.values(), exp_vector(two, 1).values()) == 0.0);

    const auto ind = io::function_from_json(io::json::parse(R"("indicator_left")"), two);
    CHECK(ind.values()[0] == cplx(1.0));
    CHECK(ind.values()[1] == cplx(0.0));

    // seeded generator is deterministic across calls
    const auto r1 = io::function_from_json(io::json::parse(R"x("random(42)")x"), two);
    const auto r2 = io::function_from_json(io::json::parse(R"x("random(42)")x"), two);
    CHECK(kftest::max_abs_diff(r1.values(), r2.values()) == 0.0);
    const auto r3 = io::function_from_json(io::json::parse(R"x("random(43)")x"), two);
    CHECK(kftest::max_abs_diff(r1.values(), r3.values()) > 0.0);

    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"("nope")"), two),
                    validation_error);
    CHECK_THROWS_AS(io::function_from_json(io::json::parse(R"(3.5)"), two), validation_error);
}

TEST_CASE("expansion artifact round-trips bit-exactly") {
    SplitMix64 rng(80);
    AtomicMeasure m = kftest::random_measure(rng);
    const FunctionOnSupport f = kftest::random_function(m, rng);
    const Expansion e = coefficients_via_alpha(f, 12);

    const io::json j = io::expansion_to_json(e, Measure(m));
    const Expansion back = io::expansion_from_json(io::json::parse(j.dump()));
    REQUIRE(back.coefficients.size() == e.coefficients.size());
    for (std::size_t n = 0; n < e.coefficients.size(); ++n)
        CHECK(back.coefficients[n] == e.coefficients[n]); // bitwise
    CHECK(back.parseval_partial == e.parseval_partial);
    CHECK(back.residual == e.residual);
}

TEST_CASE("atomic write leaves no temp file behind") {
    const fs::path dir = temp_dir();
    const fs::path target = dir / "artifact.json";
    io::atomic_write(target, "{\"ok\":true}\n");
    CHECK(fs::exists(target));
    CHECK(!fs::exists(target.string() + ".tmp"));
    std::ifstream in(target);
    std::string line;
    std::getline(in, line);
    CHECK(line == "{\"ok\":true}");
    fs::remove(target);
}

TEST_CASE("csv emitters use round-trippable columns") {
    const fs::path dir = temp_dir();
    const fs::path target = dir / "alpha.csv";

    AlphaSequence a;
    a.measure_id = "test";
    a.values = {cplx(1.0), cplx(-1.0, 0.0), cplx(0.1, -0.25)};
    io::write_alpha_csv(target, a);

    std::ifstream in(target);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,re,im");
    std::getline(in, line);
    CHECK(line == "0,1,0");
    std::getline(in, line);
    CHECK(line == "1,-1,0");
    std::getline(in, line);
    CHECK(line == "2,0.10000000000000001,-0.25");
    fs::remove(target);
}
