// Runs the built command-line tool on the files in tests/data.

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "urysohn/report.hpp"

using namespace urysohn;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(URYSOHN_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(URYSOHN_DATA) + "/" + name; }

}  // namespace

TEST_CASE("validate") {
  auto ok = cli("validate " + data("P3.ums"));
  CHECK(ok.code == 0);
  CHECK(parse_report(ok.out)["valid"] == true);
  CHECK(cli("validate " + data("point.ums")).code == 0);

  auto bad = cli("validate " + data("bad_triangle.ums"));
  CHECK(bad.code == 1);
  CHECK(parse_report(bad.out)["violations"][0]["triple"] == Report({0, 1, 2}));
}

TEST_CASE("approx on the square") {
  auto r = cli("approx --space " + data("square.ums") + " --isometries " + data("rot.perm") +
               " --points 0 --epsilon 1/2 --seed 7");
  CHECK(r.code == 0);
  auto rep = parse_report(r.out);
  CHECK(rep["success"] == true);
  CHECK(Rational::parse(rep["certificate_deviation"].get<std::string>()) <= Rational(1, 2));
}

TEST_CASE("ramsey on K5 gives the pentagon") {
  auto r = cli("ramsey --x " + data("K5.ums") + " --f " + data("pair.ums") + " --g " + data("triangle.ums") +
               " --colors 2 --epsilon 1/2 --mode subspaces --verify");
  CHECK(r.code == 1);
  auto rep = parse_report(r.out);
  CHECK(rep["status"] == "fails");
  CHECK(rep["verified"] == true);
  // Each point lies on exactly two edges of either colour.
  std::array<int, 5> deg{};
  for (std::size_t e = 0; e < rep["domain"].size(); ++e)
    if (rep["bad_coloring"][e] == 1) {
      ++deg[rep["domain"][e][0].get<std::size_t>()];
      ++deg[rep["domain"][e][1].get<std::size_t>()];
    }
  for (int d : deg) CHECK(d == 2);

  auto t = cli("ramsey --tuple " + data("K5.tuple"));
  CHECK(t.code == 1);
  CHECK(parse_report(t.out)["bad_coloring"] == rep["bad_coloring"]);
  CHECK(cli("ramsey --x " + data("K6.ums") + " --f " + data("pair.ums") + " --g " + data("triangle.ums") +
            " --colors 2 --epsilon 1/2 --mode subspaces")
            .code == 0);
}

TEST_CASE("remaining subcommands") {
  CHECK(cli("flip --x " + data("K5.ums") + " --f " + data("pair.ums") + " --epsilon 1/2").code == 1);
  CHECK(cli("flip --x " + data("K5.ums") + " --f " + data("pair.ums") + " --epsilon 1").code == 0);
  CHECK(cli("rdm --x " + data("square.ums") + " --group " + data("rot.perm") + " --cover " + data("halves.cover") +
            " --epsilon 0 --k 0,1")
            .code == 0);
  auto m = cli("melambda --space " + data("ab.ums") + " --f " + data("const_a.step") + " --g " + data("half_ab.step") +
               " --action " + data("swap.perm") + " --action-map " + data("swap_half.step"));
  CHECK(m.code == 0);
  CHECK(parse_report(m.out)["value"] == "1/2");
  auto u = cli("melambda --group " + data("z4.perm") + " --f " + data("z4_f.step") + " --g " + data("z4_zero.step") +
               " --V 0,1");
  CHECK(parse_report(u.out)["lhs"] == "1/4");
  CHECK(parse_report(u.out)["rhs"] == "7/12");
  auto c = cli("concentrate --n 100 --epsilon 1/10 --samples 2000 --seed 1");
  CHECK(c.code == 0);
  CHECK(parse_report(c.out)["shift"] == 10);
  CHECK(cli("sphere " + data("antipodal.ums")).code == 0);
  CHECK(cli("sphere " + data("quadruple.ums")).code == 1);
  CHECK(cli("glue --a " + data("pair.ums") + " --b " + data("pair_6_5.ums") + " --epsilon 1/5").code == 0);
  CHECK(cli("glue --a " + data("pair.ums") + " --b " + data("pair_6_5.ums") + " --epsilon 1/10").code == 1);
  CHECK(parse_report(cli("embed --f " + data("pair.ums") + " --x " + data("P3.ums")).out)["count"] == 4);
  CHECK(parse_report(cli("iso-group " + data("P3.ums")).out)["order"] == 2);
  CHECK(cli("katetov --space " + data("P3.ums") + " --support 0,2 --values 1,1").code == 0);
  CHECK(cli("katetov --space " + data("P3.ums") + " --support 0,2 --values 1,4").code == 1);
  CHECK(cli("grow --space " + data("pair.ums") + " --grid 1,2 --k 1 --rounds 1 --seed 3").code == 0);
}

TEST_CASE("errors exit with 2") {
  CHECK(cli("validate " + data("missing.ums")).code == 2);
  CHECK(cli("approx --space " + data("P3.ums") + " --points 7 --epsilon 1/2").code == 2);
  CHECK(cli("approx --space " + data("P3.ums") + " --points 0 --epsilon 1/2 --strategy nope").code == 2);
  CHECK(cli("validate " + data("P3.ums") + " --no-such-flag").code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  const std::string approx = "approx --space " + data("square.ums") + " --isometries " + data("rot.perm") +
                             " --points 0 --epsilon 1/2 --seed 7";
  CHECK(cli(approx).out == cli(approx).out);
  CHECK(cli(approx + " --jobs 1").out == cli(approx + " --jobs 3").out);
  const std::string conc = "concentrate --n 60 --epsilon 1/20 --samples 5000 --seed 11";
  CHECK(cli(conc + " --jobs 1").out == cli(conc + " --jobs 4").out);
}
