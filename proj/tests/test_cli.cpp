#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = decat::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json invoke_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = invoke(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every number that appears in the JSON result, as text.
void collect_numbers(const nlohmann::json& j, const std::string& key, std::vector<std::string>& out) {
  if (key == "expression" || key == "left" || key == "right" || key == "input" ||
      key == "generators" || key == "note" || key == "significant_digits")
    return;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_numbers(v, k, out);
  } else if (j.is_array()) {
    for (const auto& v : j) collect_numbers(v, key, out);
  } else if (j.is_number()) {
    out.push_back(j.dump());
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && s.find_first_not_of("0123456789/-+.e") == std::string::npos) out.push_back(s);
  }
}

}  // namespace

TEST_CASE("coefficients of binary trees") {
  const auto r = invoke({"coeff", "B", "--terms", "6", "--egf"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("egf_coefficient: 1, 1, 2, 5, 14, 42\n") != std::string::npos);
  const auto j = invoke_json({"coeff", "B", "--terms", "6", "--egf"});
  CHECK(j["result"]["values"] == nlohmann::json({"1", "1", "2", "5", "14", "42"}));
  CHECK(j["result"]["sequence"][3]["count"] == "30");
}

TEST_CASE("coefficients of partitions and the empty species") {
  CHECK(invoke_json({"coeff", "E(E+)", "--terms", "6"})["result"]["values"] ==
        nlohmann::json({"1", "1", "2", "5", "15", "52"}));
  CHECK(invoke_json({"coeff", "0", "--terms", "3"})["result"]["values"] ==
        nlohmann::json({"0", "0", "0"}));
}

TEST_CASE("evaluation commands") {
  const auto e = invoke_json({"eval", "E", "--at", "1"});
  CHECK(e["result"]["status"] == "converged");
  CHECK(e["result"]["value_decimal"]["digits"] == "2.718281828");
  CHECK(e["result"]["value_decimal"]["approximate"] == true);
  const auto b = invoke_json({"eval", "B", "--at", "1"});
  CHECK(b["result"]["status"] == "diverged");
  CHECK(b["result"]["continuation"]["re"]["digits"] == "0.5");
  CHECK(b["result"]["continuation"]["im"]["digits"] == "-0.8660254038");
  const auto cube = invoke_json({"eval", "X^3", "--at", "2"});
  CHECK(cube["result"]["status"] == "converged");
  CHECK(cube["result"]["value"] == "8");
  CHECK(cube["result"]["tail_bound"] == "0");
  const auto poly = invoke_json({"eval", "X^3 + 1", "--at", "3/2"});
  CHECK(poly["result"]["value"] == "35/8");
}

TEST_CASE("inner product command") {
  const auto j = invoke_json({"inner", "E", "E"});
  CHECK(j["result"]["status"] == "converged");
  CHECK(j["result"]["value_decimal"]["digits"] == "2.718281828");
  CHECK(invoke_json({"inner", "1", "1"})["result"]["value"] == "1");
}

TEST_CASE("quotient command") {
  CHECK(invoke_json({"quotient", "--size", "6", "--gens", "(1 4)(2 5)(3 6)"})["result"]["cardinality"] ==
        "3");
  const auto half = invoke_json({"quotient", "--size", "5", "--gens", "(1 5)(2 4)"});
  CHECK(half["result"]["cardinality"] == "5/2");
  CHECK(half["result"]["orbits"][2]["stabilizer_order"] == 2);
  CHECK(invoke_json({"quotient", "--size", "4", "--gens", ""})["result"]["cardinality"] == "4");
  CHECK(invoke_json({"quotient", "--size", "4"})["result"]["group_order"] == 1);
}

TEST_CASE("homotopy command") {
  CHECK(invoke_json({"homotopy", "--components", "2"})["result"]["cardinality"] == "1/2");
  CHECK(invoke_json({"homotopy", "--components", "6,2"})["result"]["cardinality"] == "1/3");
  CHECK(invoke_json({"homotopy", "--components", "2; 3"})["result"]["cardinality"] == "5/6");
}

TEST_CASE("wick command") {
  const auto p = invoke({"wick", "--power", "3"});
  CHECK(p.out.find("normal_form: A^3 + 3 A* A^2 + 3 A*^2 A + A*^3\n") != std::string::npos);
  CHECK(invoke_json({"wick", "--normal", "A A*"})["result"]["normal_form"] == "1 + A* A");
  CHECK(invoke_json({"wick", "--normal", "A* A"})["result"]["normal_form"] == "A* A");
}

TEST_CASE("feynman command") {
  const auto j = invoke_json({"feynman", "--valences", "2,2", "--out", "0", "--in", "0", "--oracle"});
  CHECK(j["result"]["algebraic"] == "2");
  CHECK(j["result"]["oracle"] == 2);
  CHECK(j["result"]["verdict"] == "agree");
  CHECK(invoke_json({"feynman", "--valences", "4,4"})["result"]["algebraic"] == "24");
  CHECK(invoke_json({"feynman", "--valences", "3"})["result"]["algebraic"] == "0");
  const auto d = invoke({"feynman", "--valences", "2", "--out", "1", "--in", "1", "--diagrams"});
  CHECK(d.code == 0);
  CHECK(d.out.find("v1.1-s1") != std::string::npos);
}

TEST_CASE("oracle command") {
  const auto j = invoke_json({"oracle", "E*E", "--nmax", "7"});
  CHECK(j["result"]["verdict"] == "agree");
  CHECK(j["result"]["rows"].size() == 8);
  CHECK(j["result"]["rows"][7]["enumerated"] == 128);
}

TEST_CASE("exit codes") {
  const auto parse = invoke({"coeff", "E("});
  CHECK(parse.code == 2);
  CHECK(parse.out.empty());
  CHECK(parse.err.find("UnbalancedParen") != std::string::npos);
  CHECK(parse.err.find("^") != std::string::npos);

  CHECK(invoke({"coeff", "E(E)"}).code == 1);
  CHECK(invoke({"coeff", "fix F. F"}).code == 1);
  CHECK(invoke({"eval", "E", "--at", "-1"}).code == 1);
  CHECK(invoke({"eval", "E", "--at", "one"}).code == 2);
  CHECK(invoke({"eval", "E", "--terms", "4"}).code == 1);
  CHECK(invoke({"homotopy", "--components", "0"}).code == 1);
  CHECK(invoke({"homotopy", "--components", "x"}).code == 2);
  CHECK(invoke({"feynman", "--valences", "8,8", "--out", "2"}).code == 1);
  CHECK(invoke({"oracle", "E(E+)"}).code == 1);
  CHECK(invoke({"oracle", "E", "--nmax", "10"}).code == 1);
  CHECK(invoke({"wick", "--power", "13"}).code == 1);
  CHECK(invoke({"wick"}).code == 2);
  CHECK(invoke({"wick", "--normal", "A +"}).code == 2);

  const auto cycle = invoke({"quotient", "--size", "3", "--gens", "(1 4)"});
  CHECK(cycle.code == 2);
  CHECK(cycle.err.find("BadCycle at 3..4") != std::string::npos);

  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"coeff"}).code == 2);
  CHECK(invoke({"coeff", "X", "--terms", "ten"}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("coeff") != std::string::npos);
}

TEST_CASE("plain and JSON output carry the same numbers") {
  const std::vector<std::vector<std::string>> invocations{
      {"coeff", "B", "--terms", "8", "--egf"},
      {"coeff", "Par*L", "--terms", "7"},
      {"eval", "E", "--at", "1"},
      {"eval", "B", "--at", "1"},
      {"eval", "Par", "--at", "1/3"},
      {"inner", "E", "X*E"},
      {"quotient", "--size", "5", "--gens", "(1 5)(2 4)"},
      {"homotopy", "--components", "2,3;5"},
      {"wick", "--normal", "adj(:Phi^2: :Phi^3:)"},
      {"feynman", "--valences", "1,2,3", "--out", "1", "--in", "1", "--oracle"},
      {"oracle", "B + L", "--nmax", "5"},
  };
  for (const auto& args : invocations) {
    CAPTURE(args.front());
    const auto plain = invoke(args);
    REQUIRE(plain.code == 0);
    std::vector<std::string> numbers;
    collect_numbers(invoke_json(args)["result"], "", numbers);
    CHECK_FALSE(numbers.empty());
    for (const auto& n : numbers) {
      CAPTURE(n);
      CHECK(plain.out.find(n) != std::string::npos);
    }
  }
}

TEST_CASE("golden outputs are byte-stable") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"coeff_B_egf.txt", {"coeff", "B", "--terms", "6", "--egf"}},
      {"eval_E_at_1.txt", {"eval", "E", "--at", "1"}},
      {"eval_B_at_1.txt", {"eval", "B", "--at", "1"}},
      {"quotient_5_reflection.txt", {"quotient", "--size", "5", "--gens", "(1 5)(2 4)"}},
      {"wick_power_3.txt", {"wick", "--power", "3"}},
  };
  for (const auto& [file, args] : cases) {
    CAPTURE(file);
    const auto r = invoke(args);
    CHECK(r.code == 0);
    CHECK(r.out == read_file(std::string(DECAT_GOLDEN_DIR) + "/" + file));
  }
}
