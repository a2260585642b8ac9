#include "loewner/maps.hpp"

#include "loewner/error.hpp"
#include "loewner/random.hpp"
#include "loewner/spectral.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loewner {

namespace {

std::string matrix_tag(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_full_column_rank(const Eigen::MatrixXd& v, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0)))) {
    throw InvalidArgument(std::string(what) + ": factor must have full column rank");
  }
}

std::pair<int, int> parse_shape(const std::string& s) {
  const auto rc = text::split(s, 'x');
  if (rc.size() != 2) throw ParseError("expected RxC shape, got '" + s + "'");
  return {text::parse_int(rc[0], "rows"), text::parse_int(rc[1], "columns")};
}

Eigen::MatrixXd isometry(int rows, int cols, SplitMix64& rng) {
  const Eigen::MatrixXd g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  for (int j = 0; j < cols; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace

MapSpec::MapSpec(Variant v, std::string id)
    : v_(std::make_shared<const Variant>(std::move(v))), id_(std::move(id)) {}

MapSpec MapSpec::identity(int dim) {
  if (dim < 1) throw DimensionError("identity map requires dim >= 1");
  return MapSpec(Identity{dim}, "identity");
}

MapSpec MapSpec::congruence(Eigen::MatrixXd v) {
  if (v.rows() < 1 || v.cols() < 1 || v.cols() > v.rows()) {
    throw DimensionError("congruence factor must be R x C with 1 <= C <= R, got " + matrix_tag(v));
  }
  require_full_column_rank(v, "congruence");
  auto tag = "congruence:" + matrix_tag(v);
  return MapSpec(Congruence{std::move(v)}, std::move(tag));
}

MapSpec MapSpec::kraus(std::vector<Eigen::MatrixXd> ops) {
  if (ops.empty()) throw InvalidArgument("kraus: at least one factor required");
  const auto rows = ops[0].rows();
  const auto cols = ops[0].cols();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(cols, cols);
  for (const auto& v : ops) {
    if (v.rows() != rows || v.cols() != cols) throw DimensionError("kraus: factors must share a shape");
    gram += v.transpose() * v;
  }
  if (!(lambda_min(SymMatrix(gram)) > 0.0)) {
    throw InvalidArgument("kraus: stacked factors must have full column rank");
  }
  auto tag = "kraus:" + std::to_string(ops.size()) + ":" + matrix_tag(ops[0]);
  return MapSpec(KrausSum{std::move(ops)}, std::move(tag));
}

MapSpec MapSpec::pinching(int dim, std::vector<std::vector<int>> blocks) {
  std::vector<int> seen(static_cast<std::size_t>(std::max(dim, 0)), 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("pinching: empty block");
    for (int i : b) {
      if (i < 0 || i >= dim) throw DimensionError("pinching: index out of range");
      ++seen[static_cast<std::size_t>(i)];
    }
  }
  if (dim < 1 || std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidArgument("pinching: blocks must partition 0.." + std::to_string(dim - 1));
  }
  std::string tag = "pinching:";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    tag += (i ? "," : "") + std::to_string(blocks[i].size());
  }
  return MapSpec(Pinching{std::move(blocks), dim}, std::move(tag));
}

MapSpec MapSpec::normalized_trace(int in_dim, int out_dim) {
  if (in_dim < 1 || out_dim < 1) throw DimensionError("ntrace requires positive dimensions");
  return MapSpec(NormalizedTrace{in_dim, out_dim}, "ntrace:" + std::to_string(out_dim));
}

MapSpec MapSpec::mixture(std::vector<double> weights, std::vector<MapSpec> maps) {
  if (maps.empty() || weights.size() != maps.size()) {
    throw InvalidArgument("mix: need one weight per map");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("mix: weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("mix: weights must have a positive sum");
  for (const auto& m : maps) {
    if (m.in_dim() != maps[0].in_dim() || m.out_dim() != maps[0].out_dim()) {
      throw DimensionError("mix: component maps must share input and output dimensions");
    }
  }
  std::string tag = "mix:";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    tag += (i ? "+" : "") + text::format_double(weights[i]) + "*" + maps[i].id();
  }
  return MapSpec(Mixture{std::move(weights), std::move(maps)}, std::move(tag));
}

MapSpec MapSpec::parse(std::string_view text_in, int in_dim, std::uint64_t default_seed) {
  const std::string text(text_in);
  if (in_dim < 1) throw DimensionError("map input dimension must be >= 1");

  if (text.rfind("mix:", 0) == 0) {
    std::vector<double> weights;
    std::vector<MapSpec> maps;
    std::uint64_t k = 0;
    for (const auto& term : text::split(std::string_view(text).substr(4), '+')) {
      const auto star = term.find('*');
      if (star == std::string::npos) throw ParseError("mix term '" + term + "' lacks 'W*'");
      weights.push_back(text::parse_double(term.substr(0, star), "mix weight"));
      const auto inner = term.substr(star + 1);
      if (inner.rfind("mix:", 0) == 0) throw ParseError("nested mix is not supported");
      maps.push_back(parse(inner, in_dim, SplitMix64::mix(default_seed + ++k)));
    }
    return mixture(std::move(weights), std::move(maps));
  }

  const auto parts = text::split(text, ':');
  const auto& head = parts[0];
  if (head == "identity" && parts.size() == 1) return identity(in_dim);

  if (head == "ntrace" && parts.size() == 2) {
    return normalized_trace(in_dim, text::parse_int(parts[1], "ntrace output dim"));
  }

  if (head == "congruence" && parts.size() >= 3) {
    const auto& kind = parts[1];
    if (kind == "scaled" && parts.size() == 3) {
      const double c = text::parse_double(parts[2], "congruence scale");
      auto m = congruence(c * Eigen::MatrixXd::Identity(in_dim, in_dim));
      m.id_ = "congruence:scaled:" + text::format_double(c);
      return m;
    }
    if ((kind == "random" || kind == "isometry") && parts.size() <= 4) {
      const auto [rows, cols] = parse_shape(parts[2]);
      if (rows != in_dim) {
        throw DimensionError("congruence rows " + std::to_string(rows) + " != input dim " +
                             std::to_string(in_dim));
      }
      if (cols < 1 || cols > rows) throw DimensionError("congruence needs 1 <= C <= R");
      const std::uint64_t seed =
          parts.size() == 4 ? text::parse_u64(parts[3], "congruence seed") : default_seed;
      SplitMix64 rng(seed);
      Eigen::MatrixXd v = kind == "random" ? gaussian_matrix(rows, cols, rng) : isometry(rows, cols, rng);
      auto m = congruence(std::move(v));
      m.id_ = "congruence:" + kind + ":" + parts[2] + ":" + std::to_string(seed);
      return m;
    }
  }

  if (head == "kraus" && parts.size() >= 2 && parts.size() <= 4) {
    const int count = text::parse_int(parts[1], "kraus count");
    if (count < 1) throw ParseError("kraus count must be >= 1");
    const bool unital = parts.size() >= 3 && parts[2] == "unital";
    std::uint64_t seed = default_seed;
    if (parts.size() == 4 || (parts.size() == 3 && !unital)) {
      seed = text::parse_u64(parts.back(), "kraus seed");
    }
    if (parts.size() == 4 && !unital) throw ParseError("malformed kraus map '" + text + "'");
    SplitMix64 rng(seed);
    std::vector<Eigen::MatrixXd> ops;
    for (int i = 0; i < count; ++i) ops.push_back(gaussian_matrix(in_dim, in_dim, rng) / std::sqrt(in_dim));
    if (unital) {
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(in_dim, in_dim);
      for (const auto& v : ops) gram += v.transpose() * v;
      const Eigen::MatrixXd norm = inv_sqrtm(SymMatrix(gram)).mat();
      for (auto& v : ops) v = v * norm;
    }
    auto m = kraus(std::move(ops));
    m.id_ = "kraus:" + std::to_string(count) + (unital ? ":unital:" : ":") + std::to_string(seed);
    return m;
  }

  if (head == "pinching" && parts.size() == 2) {
    std::vector<std::vector<int>> blocks;
    int next = 0;
    for (const auto& b : text::split(parts[1], ',')) {
      const int size = text::parse_int(b, "pinching block size");
      if (size < 1) throw ParseError("pinching block sizes must be >= 1");
      std::vector<int> block(static_cast<std::size_t>(size));
      std::iota(block.begin(), block.end(), next);
      next += size;
      blocks.push_back(std::move(block));
    }
    if (next != in_dim) {
      throw DimensionError("pinching block sizes sum to " + std::to_string(next) + ", input dim is " +
                           std::to_string(in_dim));
    }
    return pinching(in_dim, std::move(blocks));
  }

  throw ParseError("unknown map '" + text + "'");
}

int MapSpec::in_dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Identity>) return m.dim;
        else if constexpr (std::is_same_v<T, Congruence>) return static_cast<int>(m.v.rows());
        else if constexpr (std::is_same_v<T, KrausSum>) return static_cast<int>(m.ops[0].rows());
        else if constexpr (std::is_same_v<T, Pinching>) return m.dim;
        else if constexpr (std::is_same_v<T, NormalizedTrace>) return m.in_dim;
        else return m.maps[0].in_dim();
      },
      *v_);
}

int MapSpec::out_dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Identity>) return m.dim;
        else if constexpr (std::is_same_v<T, Congruence>) return static_cast<int>(m.v.cols());
        else if constexpr (std::is_same_v<T, KrausSum>) return static_cast<int>(m.ops[0].cols());
        else if constexpr (std::is_same_v<T, Pinching>) return m.dim;
        else if constexpr (std::is_same_v<T, NormalizedTrace>) return m.out_dim;
        else return m.maps[0].out_dim();
      },
      *v_);
}

SymMatrix apply(const MapSpec& phi, const SymMatrix& x) {
  if (x.dim() != phi.in_dim()) {
    throw DimensionError("map " + phi.id() + " expects dim " + std::to_string(phi.in_dim()) +
                         ", got " + std::to_string(x.dim()));
  }
  return std::visit(
      [&x](const auto& m) -> SymMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MapSpec::Identity>) {
          return x;
        } else if constexpr (std::is_same_v<T, MapSpec::Congruence>) {
          return SymMatrix::congruence(m.v, x);
        } else if constexpr (std::is_same_v<T, MapSpec::KrausSum>) {
          Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m.ops[0].cols(), m.ops[0].cols());
          for (const auto& v : m.ops) acc += v.transpose() * x.mat() * v;
          return SymMatrix(acc);
        } else if constexpr (std::is_same_v<T, MapSpec::Pinching>) {
          Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.dim(), x.dim());
          for (const auto& block : m.blocks)
            for (int i : block)
              for (int j : block) out(i, j) = x(i, j);
          return SymMatrix(out);
        } else if constexpr (std::is_same_v<T, MapSpec::NormalizedTrace>) {
          return SymMatrix::scalar(m.out_dim, x.trace() / m.in_dim);
        } else {
          SymMatrix acc = SymMatrix::zero(m.maps[0].out_dim());
          for (std::size_t i = 0; i < m.maps.size(); ++i) acc = acc + m.weights[i] * apply(m.maps[i], x);
          return acc;
        }
      },
      phi.variant());
}

UnitalityVerdict check_unital(const MapSpec& phi) {
  const auto image = apply(phi, SymMatrix::identity(phi.in_dim()));
  const double deviation = ui_norm(image - SymMatrix::identity(phi.out_dim()), NormKind::op());
  return {deviation <= 1e-10, deviation};
}

}  // namespace loewner
