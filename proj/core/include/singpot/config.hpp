#ifndef SINGPOT_CONFIG_HPP
#define SINGPOT_CONFIG_HPP

#include <memory>
#include <string>
#include <vector>

#include "singpot/dirichlet.hpp"

namespace singpot {

// Arithmetic over coordinates x1..xm, numeric constants, +, -, * and
// parentheses; the inline boundary-data grammar of the CLI.
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& src);
  double eval(const Point& x) const;
  const std::string& source() const { return src_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
};

struct RunConfig {
  std::string problem;  // fa-eval | q-eval | gauss-identity | solve-ball | solve-general | verify
  int m = 3;
  std::vector<double> alpha{0.3};
  double R = 1.0;
  int order = 32;
  SeriesControl ctrl;
  std::string data = "const1";  // const1 | coordinate | product | expr
  std::string phi_expr;
  std::vector<std::string> tau_expr;
  std::vector<Point> points;
  std::vector<Point> poles;  // q-eval source points
  double fa_a = 0.0;
  std::vector<double> fa_b, fa_c;
  std::vector<Point> fa_y;
  std::string output;
  std::string format = "csv";

  int n() const { return static_cast<int>(alpha.size()); }
  void validate() const;  // throws ConfigError with field diagnostics
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string emit_config(const RunConfig& cfg);

// Builds the boundary data named by cfg.data ("const1", "coordinate",
// "product", or "expr" with the inline expressions).
BoundaryData make_boundary_data(const RunConfig& cfg);

}  // namespace singpot

#endif  // SINGPOT_CONFIG_HPP
