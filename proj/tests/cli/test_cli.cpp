// Drives the openbook-lab binary through its exit codes and output files.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string bin;
fs::path dir;
int failures = 0;

int run(const std::string& args) {
  const std::string cmd = "\"" + bin + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect(const std::string& what, int got, int want) {
  const bool ok = got == want;
  if (!ok) ++failures;
  std::cout << (ok ? "ok   " : "FAIL ") << what << " (exit " << got << ", want " << want << ")\n";
}

void expect_nonzero(const std::string& what, int got) {
  if (got == 0) ++failures;
  std::cout << (got != 0 ? "ok   " : "FAIL ") << what << " (exit " << got << ")\n";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string book(const std::string& name) { return "\"" + (dir / "catalog" / (name + ".book")).string() + "\""; }
std::string file(const std::string& name) { return "\"" + (dir / name).string() + "\""; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: test_cli <openbook-lab> <scratch dir>\n";
    return 2;
  }
  bin = argv[1];
  dir = argv[2];
  fs::remove_all(dir);
  fs::create_directories(dir);

  expect("catalog written", run("catalog --out " + file("catalog")), 0);
  expect("check disc-id", run("check " + book("disc-id")), 0);
  expect("check annulus-neg-stabilized-3x", run("check " + book("annulus-neg-stabilized-3x")), 10);
  std::ofstream(dir / "garbage.book") << "this is not a book\n";
  expect("check garbage", run("check " + file("garbage.book")), 2);
  expect("check missing file", run("check " + file("absent.book")), 2);

  expect("search annulus-tau-inverse --depth 3",
         run("search " + book("annulus-tau-inverse") + " --depth 3 --out " + file("neg.cert")), 10);
  expect("verify search output", run("verify " + book("annulus-tau-inverse") + " " + file("neg.cert")), 0);
  expect_nonzero("verify against the wrong book", run("verify " + book("annulus-tau-plus") + " " + file("neg.cert")));
  {
    const std::string text = slurp(dir / "neg.cert");
    std::ofstream(dir / "truncated.cert") << text.substr(0, text.size() / 2);
  }
  expect_nonzero("verify truncated certificate",
                 run("verify " + book("annulus-tau-inverse") + " " + file("truncated.cert")));
  expect("search annulus-tau-plus --depth 4 reports absence",
         run("search " + book("annulus-tau-plus") + " --depth 4 --multiplicity 2"), 0);

  for (const std::string name : {"disc-id", "annulus-tau-plus", "annulus-neg-stabilized-3x", "torus-a"}) {
    const int check = run("check " + book(name));
    const int search = run("search " + book(name) + " --depth 0");
    expect("depth 0 search agrees with check on " + name, search, check);
  }

  expect("surgery-annulus-id", run("surgery " + book("surgery-annulus-id") + " --depth 3 --multiplicity 2"), 0);
  expect("surgery-annulus-tau-inverse-squared",
         run("surgery " + book("surgery-annulus-tau-inverse-squared") + " --depth 3 --out " + file("surgery.txt")),
         10);
  {
    const std::string report = slurp(dir / "surgery.txt");
    const bool ok = report.find("witness chain complete") != std::string::npos &&
                    report.find("certificate v1") != std::string::npos &&
                    report.find("destabilizations:") != std::string::npos;
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << "surgery report carries the chain\n";
  }
  expect("surgery-pants-disjoint", run("surgery " + book("surgery-pants-disjoint") + " --depth 3"), 10);
  expect("surgery without L is a usage error", run("surgery " + book("torus-a")), 64);

  expect("render disc-id", run("render " + book("disc-id") + " --out " + file("a.svg")), 0);
  expect("render again", run("render " + book("disc-id") + " --out " + file("b.svg")), 0);
  {
    const bool same = slurp(dir / "a.svg") == slurp(dir / "b.svg") && !slurp(dir / "a.svg").empty();
    if (!same) ++failures;
    std::cout << (same ? "ok   " : "FAIL ") << "render output is byte-identical\n";
  }
  expect("json output", run("check " + book("annulus-neg-stabilized-3x") + " --format json --out " + file("v.json")),
         10);
  {
    const bool ok = slurp(dir / "v.json").find("\"found\": true") != std::string::npos;
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << "json verdict written\n";
  }
  expect("unknown flag is a usage error", run("check " + book("disc-id") + " --bogus"), 64);

  std::cout << (failures ? "FAILED" : "PASSED") << " (" << failures << " failures)\n";
  return failures ? 1 : 0;
}
