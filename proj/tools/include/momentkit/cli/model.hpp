#pragma once

#include <momentkit/errors.hpp>
#include <momentkit/line_module.hpp>
#include <momentkit/moment.hpp>
#include <momentkit/poisson.hpp>
#include <momentkit/tpoly.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace momentkit::cli {

/// Syntax or semantic error in a model or expression, with a 1-based
/// location. what() reads `[source:]line:col: message`.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &message,
             const std::string &source = "");

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string &message() const noexcept { return message_; }

private:
  std::size_t line_, column_;
  std::string message_;
};

struct ConformalSpec {
  std::string name;
  std::map<std::size_t, TPoly> values; // order 0; absent generators map to 0
  Rat weight;

  friend bool operator==(const ConformalSpec &, const ConformalSpec &) = default;
};

struct PointSpec {
  std::string name;
  std::vector<Rat> coords;
  std::optional<Rat> s;
  std::optional<Rat> t;

  Point point() const { return {coords, s, t}; }
  friend bool operator==(const PointSpec &, const PointSpec &) = default;
};

struct TwistSpec {
  std::map<std::size_t, TPoly> phi; // order n; absent generators are fixed
  std::optional<TPoly> unit;        // order n-1; absent means 1

  friend bool operator==(const TwistSpec &, const TwistSpec &) = default;
};

/// Parsed model file. Brackets are keyed by (i, j) with i < j; a
/// declaration {y, x} = f is stored as (x, y) -> -f.
struct ModelFile {
  RingPtr ring;
  std::optional<unsigned> order;
  std::map<std::pair<std::size_t, std::size_t>, TPoly> brackets;
  std::map<std::size_t, TPoly> alpha;
  std::optional<ConformalSpec> conformal;
  std::vector<PointSpec> points;
  std::optional<TwistSpec> twist;

  const PointSpec *find_point(std::string_view name) const;
  friend bool operator==(const ModelFile &a, const ModelFile &b);
};

ModelFile parse_model(std::string_view text);

/// Canonical text form; parse_model(render_model(m)) == m.
std::string render_model(const ModelFile &m);

/// Expression with s allowed (negative powers of s included), coefficients
/// at the given order. Used for `tot --left/--right`.
TotElement parse_tot_expression(std::string_view text, const RingPtr &ring, unsigned order);

/// Model -> algebra. These throw Error for missing declarations.
unsigned require_order(const ModelFile &m);
PoissonStructure structure_of(const ModelFile &m);
MomentSystem system_of(const ModelFile &m);
GaugeTwist gauge_of(const ModelFile &m);
ConformalField conformal_of(const ModelFile &m);

/// Algebra -> model; zero entries are omitted.
ModelFile model_of(const MomentSystem &ms);

} // namespace momentkit::cli
