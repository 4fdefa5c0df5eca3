#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drcoh/drcoh.h"

namespace {

struct Args {
  std::string vars;
  std::vector<std::string> polys;
  std::string minus;
  bool assume_smooth = false;
  std::string rays;
  std::string ray_names;
  std::string twist;
  std::string table;
  std::string workspace;
  long max_gb_steps = 2000000;
  int max_level = 8;
  bool parallel = false;
};

int fail(drcoh_status s) {
  std::fprintf(stderr, "drcoh: %s: %s\n", drcoh_status_name(s), drcoh_last_error());
  return 10 + static_cast<int>(s);
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de Rham cohomology of complements, closed and locally closed sets, and toric surfaces"};
  app.require_subcommand(1, 1);
  Args a;

  auto common = [&](CLI::App* c) {
    c->add_option("--table", a.table, "write the chart tables of the main cover to this directory");
    c->add_option("--workspace", a.workspace, "chart table cache (default: $DRCOH_WORKSPACE)");
    c->add_option("--max-gb-steps", a.max_gb_steps, "cap on Groebner reduction steps per run")
        ->check(CLI::PositiveNumber);
    c->add_option("--max-level", a.max_level, "cap on the exhaustion level when enlarging subcomplexes")
        ->check(CLI::PositiveNumber);
    c->add_flag("--parallel", a.parallel, "run the affine pipelines of distinct pieces concurrently");
  };
  auto polys = [&](CLI::App* c, const std::string& what) {
    c->add_option("--vars", a.vars, "comma separated variable names")->required();
    c->add_option("--poly", a.polys, what)->required()->take_all();
    common(c);
  };

  auto* affine = app.add_subcommand("affine", "complement of Var(polys) in affine space");
  polys(affine, "polynomials (repeatable)");
  auto* open = app.add_subcommand("open", "complement of Var(polys) in projective space");
  polys(open, "homogeneous polynomials (repeatable)");
  auto* closed = app.add_subcommand("closed", "the closed set Var(polys) in projective space");
  polys(closed, "homogeneous polynomials (repeatable)");
  auto* compact = app.add_subcommand("compact", "compactly supported cohomology of Var(polys) in affine space");
  polys(compact, "polynomials (repeatable)");
  auto* cup = app.add_subcommand("cup", "open set in projective space with its multiplication table");
  polys(cup, "homogeneous polynomials (repeatable)");

  auto* lc = app.add_subcommand("locally-closed", "Var(f) minus Var(g) for a smooth hypersurface Var(f)");
  lc->add_option("--vars", a.vars, "homogeneous coordinates")->required();
  lc->add_option("--poly", a.polys, "f, defining a smooth hypersurface")->required()->expected(1);
  lc->add_option("--minus", a.minus, "g, cutting out the removed set")->required();
  lc->add_flag("--assume-smooth", a.assume_smooth, "certify that Var(f) is smooth");
  common(lc);

  auto* toric = app.add_subcommand("toric", "smooth complete toric surface minus a divisor");
  toric->add_option("--rays", a.rays, "rays in counterclockwise order, e.g. \"1,0;0,1;-1,2;0,-1\"")->required();
  toric->add_option("--ray-names", a.ray_names, "homogeneous coordinate per ray");
  toric->add_option("--vars", a.vars, "torus coordinates of the Laurent polynomial (default u,v)");
  toric->add_option("--poly", a.polys, "Laurent polynomial of the divisor")->expected(0, 1);
  toric->add_option("--twist", a.twist, "line bundle twist, one integer per ray");
  common(toric);

  CLI11_PARSE(app, argc, argv);

  if (a.workspace.empty())
    if (const char* env = std::getenv("DRCOH_WORKSPACE")) a.workspace = env;

  drcoh_options* o = drcoh_options_new();
  if (!o) return fail(DRCOH_ERR_INTERNAL);
  drcoh_status s = drcoh_options_set_max_gb_steps(o, a.max_gb_steps);
  if (s == DRCOH_OK) s = drcoh_options_set_max_level(o, a.max_level);
  if (s == DRCOH_OK) s = drcoh_options_set_parallel(o, a.parallel ? 1 : 0);
  if (s == DRCOH_OK) s = drcoh_options_set_workspace(o, a.workspace.c_str());
  if (s == DRCOH_OK) s = drcoh_options_set_table_dir(o, a.table.c_str());
  if (s != DRCOH_OK) {
    drcoh_options_free(o);
    return fail(s);
  }

  auto p = c_strings(a.polys);
  drcoh_result* r = nullptr;
  if (affine->parsed()) s = drcoh_affine(o, a.vars.c_str(), p.data(), p.size(), &r);
  else if (open->parsed()) s = drcoh_open(o, a.vars.c_str(), p.data(), p.size(), &r);
  else if (closed->parsed()) s = drcoh_closed(o, a.vars.c_str(), p.data(), p.size(), &r);
  else if (compact->parsed()) s = drcoh_compact(o, a.vars.c_str(), p.data(), p.size(), &r);
  else if (cup->parsed()) s = drcoh_cup(o, a.vars.c_str(), p.data(), p.size(), &r);
  else if (lc->parsed())
    s = drcoh_locally_closed(o, a.vars.c_str(), p[0], a.minus.c_str(), a.assume_smooth ? 1 : 0, &r);
  else
    s = drcoh_toric(o, a.rays.c_str(), a.ray_names.c_str(), a.vars.c_str(), p.empty() ? nullptr : p[0],
                    a.twist.c_str(), &r);
  drcoh_options_free(o);
  if (s != DRCOH_OK) return fail(s);

  std::fputs(drcoh_result_report(r), stdout);
  if (!a.table.empty())
    std::fprintf(stderr, "drcoh: wrote %zu chart tables to %s\n", drcoh_result_tables_written(r), a.table.c_str());
  drcoh_result_free(r);
  return 0;
}
