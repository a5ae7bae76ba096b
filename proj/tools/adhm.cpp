#include <CLI11.hpp>

#include "adhm/cli/driver.hpp"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

// Every flag is passed through to the job as a string; commands validate their own.
constexpr Flag kFlags[] = {
    {"field", "Q or GF<p>[^k]; overrides the field in the input file"},
    {"zeta", "stability parameter zeta0,zeta1 (rationals such as -1/2)"},
    {"zeta-inf", "override for the framing weight in hn/jh"},
    {"dim-inf", "framing dimension for hn/jh (0 or 1)"},
    {"strict", "stability: separate Stable from StrictlySemistable (default true)"},
    {"dims", "n0,n1[,r] for enumerate, sweep and classify-w0"},
    {"assert", "sweep assertion set"},
    {"flat", "enumerate: only tuples with mu = 0 (default true)"},
    {"list", "enumerate: include the tuples in the report"},
    {"r", "rank for walls/chamber"},
    {"k", "first Chern class for walls/chamber"},
    {"n", "second Chern number for walls/chamber"},
    {"m", "chamber index"},
    {"chamber", "perverse: chamber index to test against"},
    {"m-max", "perverse: largest C_n to compare with"},
    {"side", "to-plane: left or right"},
    {"word-length", "to-plane: word length for invariant coordinates (default 2)"},
    {"ext", "fibers: extension degree of the sampled points (default 1)"},
    {"max-ext", "scan-beta/scan-alpha/framing: largest extension degree scanned"},
    {"triple", "blowup-point: b1,b2,d to send to the surface"},
    {"point", "blowup-point: z1,z2,z,w to send back"},
    {"max-tuples", "bound on enumerated tuples"},
    {"max-subspaces", "bound on enumerated subspaces"},
    {"max-points", "bound on scanned points"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with framed blowup quiver data"};
  app.require_subcommand(1);
  std::string in, out;
  std::map<std::string, std::string> values;
  for (const auto& name : adhm::commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--in", in, "input JSON file");
    sub->add_option("--out", out, "write the report here instead of stdout");
    for (const auto& flag : kFlags) sub->add_option(std::string("--") + flag.name, values[flag.name], flag.help);
  }
  CLI11_PARSE(app, argc, argv);

  adhm::JobSpec job;
  job.command = app.get_subcommands().front()->get_name();
  if (!in.empty()) job.inputPath = in;
  if (!out.empty()) job.outputPath = out;
  for (const auto& [key, value] : values)
    if (!value.empty()) job.params[key] = value;
  return adhm::run(job);
}
