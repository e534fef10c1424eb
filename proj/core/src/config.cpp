#include "singpot/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace singpot {

struct Expression::Node {
  enum class Kind { Constant, Coordinate, Add, Sub, Mul, Neg } kind;
  double constant = 0.0;
  int coord = 0;  // 0-based
  std::shared_ptr<const Node> left, right;
};

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  std::shared_ptr<const Expression::Node> parse() {
    auto node = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ConfigError("expression: unexpected input at position " + std::to_string(pos_) +
                        " in '" + s_ + "'");
    return node;
  }

 private:
  using NodePtr = std::shared_ptr<const Expression::Node>;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr make(Expression::Node n) {
    return std::make_shared<const Expression::Node>(std::move(n));
  }

  NodePtr expr() {
    auto node = term();
    while (true) {
      if (consume('+')) {
        Expression::Node n;
        n.kind = Expression::Node::Kind::Add;
        n.left = node;
        n.right = term();
        node = make(std::move(n));
      } else if (consume('-')) {
        Expression::Node n;
        n.kind = Expression::Node::Kind::Sub;
        n.left = node;
        n.right = term();
        node = make(std::move(n));
      } else {
        return node;
      }
    }
  }

  NodePtr term() {
    auto node = factor();
    while (consume('*')) {
      Expression::Node n;
      n.kind = Expression::Node::Kind::Mul;
      n.left = node;
      n.right = factor();
      node = make(std::move(n));
    }
    return node;
  }

  NodePtr factor() {
    if (consume('-')) {
      Expression::Node n;
      n.kind = Expression::Node::Kind::Neg;
      n.left = factor();
      return make(std::move(n));
    }
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (consume('(')) {
      auto node = expr();
      if (!consume(')')) throw ConfigError("expression: missing ')' in '" + s_ + "'");
      return node;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'X')) {
      std::size_t p = pos_ + 1, start = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p == start) throw ConfigError("expression: coordinate needs an index, e.g. x1");
      const int idx = std::stoi(s_.substr(start, p - start));
      if (idx < 1) throw ConfigError("expression: coordinate index must be >= 1");
      pos_ = p;
      Expression::Node n;
      n.kind = Expression::Node::Kind::Coordinate;
      n.coord = idx - 1;
      return make(std::move(n));
    }
    // number
    std::size_t p = pos_;
    while (p < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p])) || s_[p] == '.' ||
                             s_[p] == 'e' || s_[p] == 'E' ||
                             ((s_[p] == '+' || s_[p] == '-') && p > pos_ &&
                              (s_[p - 1] == 'e' || s_[p - 1] == 'E'))))
      ++p;
    if (p == pos_) throw ConfigError("expression: expected a number or coordinate in '" + s_ + "'");
    const double v = std::stod(s_.substr(pos_, p - pos_));
    pos_ = p;
    Expression::Node n;
    n.kind = Expression::Node::Kind::Constant;
    n.constant = v;
    return make(std::move(n));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, const Point& x);

}  // namespace

Expression Expression::parse(const std::string& src) {
  Expression e;
  e.root_ = ExprParser(src).parse();
  e.src_ = src;
  return e;
}

namespace {
double eval_node(const Expression::Node& n, const Point& x) {
  using K = Expression::Node::Kind;
  switch (n.kind) {
    case K::Constant:
      return n.constant;
    case K::Coordinate:
      if (n.coord >= static_cast<int>(x.size()))
        throw ConfigError("expression: coordinate index exceeds dimension");
      return x[n.coord];
    case K::Add:
      return eval_node(*n.left, x) + eval_node(*n.right, x);
    case K::Sub:
      return eval_node(*n.left, x) - eval_node(*n.right, x);
    case K::Mul:
      return eval_node(*n.left, x) * eval_node(*n.right, x);
    case K::Neg:
      return -eval_node(*n.left, x);
  }
  return 0.0;
}
}  // namespace

double Expression::eval(const Point& x) const { return eval_node(*root_, x); }

namespace {

std::vector<double> parse_number_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("config: bad number '" + tok + "' for key '" + key + "'");
    }
  }
  return out;
}

std::vector<Point> parse_point_list(const std::string& v, const std::string& key) {
  std::vector<Point> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = v.find('(', pos);
    if (open == std::string::npos) break;
    const std::size_t close = v.find(')', open);
    if (close == std::string::npos)
      throw ConfigError("config: unbalanced '(' in key '" + key + "'");
    std::string inner = v.substr(open + 1, close - open - 1);
    for (auto& ch : inner)
      if (ch == ',') ch = ' ';
    out.push_back(parse_number_list(inner, key));
    pos = close + 1;
  }
  if (out.empty() && v.find_first_not_of(" \t") != std::string::npos)
    throw ConfigError("config: expected '(..,..)' tuples for key '" + key + "'");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.alpha.clear();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool n_seen = false;
  int n_declared = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "problem") cfg.problem = val;
      else if (key == "m") cfg.m = std::stoi(val);
      else if (key == "n") { n_seen = true; n_declared = std::stoi(val); }
      else if (key == "alpha") cfg.alpha = parse_number_list(val, key);
      else if (key == "R") cfg.R = std::stod(val);
      else if (key == "order") cfg.order = std::stoi(val);
      else if (key == "rel_tol") cfg.ctrl.rel_tol = std::stod(val);
      else if (key == "abs_tol") cfg.ctrl.abs_tol = std::stod(val);
      else if (key == "max_terms") cfg.ctrl.max_terms = std::stoll(val);
      else if (key == "tail_window") cfg.ctrl.tail_window = std::stoi(val);
      else if (key == "data") cfg.data = val;
      else if (key == "phi") cfg.phi_expr = val;
      else if (key.rfind("tau", 0) == 0 && key.size() > 3) {
        const int k = std::stoi(key.substr(3));
        if (k < 1) throw ConfigError("config: tau index must be >= 1");
        if (static_cast<int>(cfg.tau_expr.size()) < k) cfg.tau_expr.resize(k);
        cfg.tau_expr[k - 1] = val;
      } else if (key == "points") cfg.points = parse_point_list(val, key);
      else if (key == "poles") cfg.poles = parse_point_list(val, key);
      else if (key == "a") cfg.fa_a = std::stod(val);
      else if (key == "b") cfg.fa_b = parse_number_list(val, key);
      else if (key == "c") cfg.fa_c = parse_number_list(val, key);
      else if (key == "y") cfg.fa_y = parse_point_list(val, key);
      else if (key == "output") cfg.output = val;
      else if (key == "format") cfg.format = val;
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ", key '" + key +
                        "': " + e.what());
    }
  }
  if (cfg.alpha.empty()) cfg.alpha = {0.3};
  if (n_seen && n_declared != static_cast<int>(cfg.alpha.size()))
    throw ConfigError("config: n does not match the number of alpha values");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "problem = " << cfg.problem << "\n";
  out << "m = " << cfg.m << "\n";
  out << "n = " << cfg.n() << "\n";
  out << "alpha =";
  for (double a : cfg.alpha) out << " " << format_double(a);
  out << "\n";
  out << "R = " << format_double(cfg.R) << "\n";
  out << "order = " << cfg.order << "\n";
  out << "rel_tol = " << format_double(cfg.ctrl.rel_tol) << "\n";
  out << "abs_tol = " << format_double(cfg.ctrl.abs_tol) << "\n";
  out << "max_terms = " << cfg.ctrl.max_terms << "\n";
  out << "tail_window = " << cfg.ctrl.tail_window << "\n";
  out << "data = " << cfg.data << "\n";
  if (!cfg.phi_expr.empty()) out << "phi = " << cfg.phi_expr << "\n";
  for (std::size_t k = 0; k < cfg.tau_expr.size(); ++k)
    if (!cfg.tau_expr[k].empty()) out << "tau" << (k + 1) << " = " << cfg.tau_expr[k] << "\n";
  auto emit_points = [&](const char* key, const std::vector<Point>& pts) {
    if (pts.empty()) return;
    out << key << " =";
    for (const auto& p : pts) {
      out << " (";
      for (std::size_t i = 0; i < p.size(); ++i)
        out << (i ? "," : "") << format_double(p[i]);
      out << ")";
    }
    out << "\n";
  };
  emit_points("points", cfg.points);
  emit_points("poles", cfg.poles);
  if (cfg.problem == "fa-eval") {
    out << "a = " << format_double(cfg.fa_a) << "\n";
    out << "b =";
    for (double v : cfg.fa_b) out << " " << format_double(v);
    out << "\n";
    out << "c =";
    for (double v : cfg.fa_c) out << " " << format_double(v);
    out << "\n";
    emit_points("y", cfg.fa_y);
  }
  if (!cfg.output.empty()) out << "output = " << cfg.output << "\n";
  out << "format = " << cfg.format << "\n";
  return out.str();
}

void RunConfig::validate() const {
  static const char* problems[] = {"fa-eval",    "q-eval",        "gauss-identity",
                                   "solve-ball", "solve-general", "verify"};
  bool ok = false;
  for (const char* p : problems)
    if (problem == p) ok = true;
  if (!ok) throw ConfigError("config: unknown problem '" + problem + "'");
  if (format != "csv" && format != "json")
    throw ConfigError("config: format must be csv or json");
  if (problem == "fa-eval") {
    const int n = static_cast<int>(fa_b.size());
    if (n < 1 || static_cast<int>(fa_c.size()) != n)
      throw ConfigError("config: fa-eval needs b and c of equal positive length");
    for (const auto& y : fa_y)
      if (static_cast<int>(y.size()) != n)
        throw ConfigError("config: fa-eval y tuples must have length n");
    if (fa_y.empty()) throw ConfigError("config: fa-eval needs at least one y tuple");
    return;
  }
  if (problem == "verify") return;
  // geometric problems
  SingularParams sp(m, alpha);  // throws PreconditionError on bad m/alpha
  (void)sp;
  if (!(R > 0.0)) throw ConfigError("config: R must be positive");
  if (order < 2) throw ConfigError("config: order must be >= 2");
  if (problem == "q-eval") {
    if (poles.empty() || points.empty())
      throw ConfigError("config: q-eval needs poles and points");
  } else if (problem == "gauss-identity" || problem == "solve-ball" ||
             problem == "solve-general") {
    if (points.empty()) throw ConfigError("config: needs evaluation points");
  }
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != m)
      throw ConfigError("config: points must have dimension m");
  for (const auto& p : poles)
    if (static_cast<int>(p.size()) != m)
      throw ConfigError("config: poles must have dimension m");
  if (data == "expr") {
    if (phi_expr.empty()) throw ConfigError("config: data = expr needs phi");
    if (static_cast<int>(tau_expr.size()) < n())
      throw ConfigError("config: data = expr needs tau1..tauN");
    Expression::parse(phi_expr);
    for (int k = 0; k < n(); ++k) Expression::parse(tau_expr[k]);
  } else if (data != "const1" && data != "coordinate" && data != "product") {
    throw ConfigError("config: unknown data '" + data + "'");
  }
}

BoundaryData make_boundary_data(const RunConfig& cfg) {
  BoundaryData bd;
  const int m = cfg.m;
  if (cfg.data == "const1") {
    auto f = [](const Point&) { return 1.0; };
    bd.phi = f;
    for (int k = 0; k < cfg.n(); ++k) bd.tau.push_back(f);
  } else if (cfg.data == "coordinate") {
    auto f = [m](const Point& x) { return x[m - 1]; };
    bd.phi = f;
    for (int k = 0; k < cfg.n(); ++k) bd.tau.push_back(f);
  } else if (cfg.data == "product") {
    auto f = [m](const Point& x) { return x[m - 2] * x[m - 1]; };
    bd.phi = f;
    for (int k = 0; k < cfg.n(); ++k) bd.tau.push_back(f);
  } else if (cfg.data == "expr") {
    const Expression phi = Expression::parse(cfg.phi_expr);
    bd.phi = [phi](const Point& x) { return phi.eval(x); };
    for (int k = 0; k < cfg.n(); ++k) {
      const Expression tau = Expression::parse(cfg.tau_expr[k]);
      bd.tau.push_back([tau](const Point& x) { return tau.eval(x); });
    }
  } else {
    throw ConfigError("make_boundary_data: unknown data '" + cfg.data + "'");
  }
  return bd;
}

}  // namespace singpot
