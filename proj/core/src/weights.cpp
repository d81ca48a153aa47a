#include "fria/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fria/error.hpp"

namespace fria {

namespace {

int checked_dim(std::size_t n, const char* what) {
  if (n < 1 || n > 3) {
    throw InvalidInput(std::string(what) + ": dimension must be 1, 2 or 3, got " + std::to_string(n));
  }
  return static_cast<int>(n);
}

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

double det3(const FullWeight& w) {
  return w(0, 0) * (w(1, 1) * w(2, 2) - w(1, 2) * w(2, 1)) -
         w(0, 1) * (w(1, 0) * w(2, 2) - w(1, 2) * w(2, 0)) +
         w(0, 2) * (w(1, 0) * w(2, 1) - w(1, 1) * w(2, 0));
}

std::vector<double> eigen2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  const double hi = mean + radius;
  double lo = mean - radius;
  // mean - radius cancels when both eigenvalues are positive; det/hi does not.
  if (mean > 0.0 && hi > 0.0) lo = (a * d - b * b) / hi;
  return {lo, hi};
}

std::vector<double> eigen3(const FullWeight& w) {
  const double off = w(0, 1) * w(0, 1) + w(0, 2) * w(0, 2) + w(1, 2) * w(1, 2);
  if (off == 0.0) {
    std::vector<double> ev{w(0, 0), w(1, 1), w(2, 2)};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double q = (w(0, 0) + w(1, 1) + w(2, 2)) / 3.0;
  const double d0 = w(0, 0) - q;
  const double d1 = w(1, 1) - q;
  const double d2 = w(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  // det((A - qI)/p) / 2
  const double b01 = w(0, 1) / p, b02 = w(0, 2) / p, b12 = w(1, 2) / p;
  const double e0 = d0 / p, e1 = d1 / p, e2 = d2 / p;
  const double det_b = e0 * (e1 * e2 - b12 * b12) - b01 * (b01 * e2 - b12 * b02) + b02 * (b01 * b12 - e1 * b02);
  const double r = std::clamp(0.5 * det_b, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = 3.0 * q - hi - lo;
  // Recover the small end from the determinant when the other two are well resolved.
  if (lo > 0.0 && mid > 1e-3 * hi) {
    const double det = det3(w);
    if (det > 0.0) lo = det / (mid * hi);
  }
  std::vector<double> ev{lo, mid, hi};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

// ---------------------------------------------------------------------------
// DInterval

DInterval::DInterval(std::span<const double> lengths) : dim_(checked_dim(lengths.size(), "DInterval")) {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!std::isfinite(lengths[i]) || lengths[i] <= 0.0) {
      throw InvalidInput("DInterval: length l_" + std::to_string(i + 1) + " must be finite and > 0, got " +
                         shortest(lengths[i]));
    }
    lengths_[i] = lengths[i];
  }
}

DInterval::DInterval(std::initializer_list<double> lengths)
    : DInterval(std::span<const double>(lengths.begin(), lengths.size())) {}

double DInterval::inverse_square_sum() const {
  double s = 0.0;
  for (double l : lengths()) s += 1.0 / (l * l);
  return s;
}

double DInterval::diagonal() const {
  double s = 0.0;
  for (double l : lengths()) s += l * l;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// DiagonalWeight

DiagonalWeight::DiagonalWeight(std::span<const double> entries)
    : dim_(checked_dim(entries.size(), "DiagonalWeight")) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) throw InvalidInput("DiagonalWeight: entries must be finite");
    entries_[i] = entries[i];
  }
}

DiagonalWeight::DiagonalWeight(std::initializer_list<double> entries)
    : DiagonalWeight(std::span<const double>(entries.begin(), entries.size())) {}

bool DiagonalWeight::is_nonnegative() const {
  return std::ranges::all_of(entries(), [](double a) { return a >= 0.0; });
}

bool DiagonalWeight::is_positive_definite() const {
  return std::ranges::all_of(entries(), [](double a) { return a > 0.0; });
}

bool DiagonalWeight::has_positive_entry() const {
  return std::ranges::any_of(entries(), [](double a) { return a > 0.0; });
}

// ---------------------------------------------------------------------------
// FullWeight

FullWeight::FullWeight(int dim, std::span<const double> row_major) {
  dim_ = checked_dim(static_cast<std::size_t>(dim), "FullWeight");
  const auto d = static_cast<std::size_t>(dim);
  if (row_major.size() != d * d) {
    throw InvalidInput("FullWeight: expected " + std::to_string(d * d) + " entries, got " +
                       std::to_string(row_major.size()));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double v = row_major[i * d + j];
      if (!std::isfinite(v)) throw InvalidInput("FullWeight: entries must be finite");
      a_[3 * i + j] = v;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (a_[3 * i + j] != a_[3 * j + i]) {
        throw InvalidInput("FullWeight: matrix is not symmetric (entry (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ") = " + shortest(a_[3 * i + j]) + ", entry (" +
                           std::to_string(j + 1) + "," + std::to_string(i + 1) + ") = " + shortest(a_[3 * j + i]) +
                           ")");
      }
    }
  }
}

FullWeight FullWeight::identity(int dim) {
  const auto d = static_cast<std::size_t>(checked_dim(static_cast<std::size_t>(dim), "FullWeight"));
  const std::array<double, 3> ones{1.0, 1.0, 1.0};
  return diagonal(std::span<const double>(ones.data(), d));
}

FullWeight FullWeight::diagonal(std::span<const double> entries) {
  FullWeight w;
  w.dim_ = checked_dim(entries.size(), "FullWeight");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) throw InvalidInput("FullWeight: entries must be finite");
    w.a_[3 * i + i] = entries[i];
  }
  return w;
}

FullWeight FullWeight::diagonal(std::initializer_list<double> entries) {
  return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

FullWeight FullWeight::diagonal(const DiagonalWeight& w) { return diagonal(w.entries()); }

FullWeight FullWeight::from_upper(std::span<const double> upper) {
  int d = 0;
  switch (upper.size()) {
    case 1: d = 1; break;
    case 3: d = 2; break;
    case 6: d = 3; break;
    default:
      throw InvalidInput("FullWeight: upper triangle needs 1, 3 or 6 entries, got " + std::to_string(upper.size()));
  }
  std::array<double, 9> rm{};
  std::size_t k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      rm[static_cast<std::size_t>(i * d + j)] = upper[k];
      rm[static_cast<std::size_t>(j * d + i)] = upper[k];
      ++k;
    }
  }
  return FullWeight(d, std::span<const double>(rm.data(), static_cast<std::size_t>(d * d)));
}

FullWeight FullWeight::from_upper(std::initializer_list<double> upper) {
  return from_upper(std::span<const double>(upper.begin(), upper.size()));
}

bool FullWeight::is_diagonal() const {
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (i != j && (*this)(i, j) != 0.0) return false;
    }
  }
  return true;
}

DiagonalWeight FullWeight::diagonal_part() const {
  std::array<double, 3> d{};
  for (int i = 0; i < dim_; ++i) d[static_cast<std::size_t>(i)] = (*this)(i, i);
  return DiagonalWeight(std::span<const double>(d.data(), static_cast<std::size_t>(dim_)));
}

FullWeight FullWeight::scaled(double c) const {
  FullWeight w = *this;
  for (double& v : w.a_) v *= c;
  return w;
}

FullWeight FullWeight::minus(const DiagonalWeight& t) const {
  if (t.dim() != dim_) throw InvalidInput("FullWeight::minus: dimension mismatch");
  FullWeight w = *this;
  for (int i = 0; i < dim_; ++i) w.a_[static_cast<std::size_t>(4 * i)] -= t[i];
  return w;
}

// ---------------------------------------------------------------------------
// Spectral data

std::vector<double> eigenvalues(const FullWeight& w) {
  switch (w.dim()) {
    case 1: return {w(0, 0)};
    case 2: return eigen2(w(0, 0), w(0, 1), w(1, 1));
    default: return eigen3(w);
  }
}

double smallest_eigenvalue(const FullWeight& w) {
  if (w.is_diagonal()) {
    const auto d = w.diagonal_part();
    return *std::ranges::min_element(d.entries());
  }
  return eigenvalues(w).front();
}

double largest_eigenvalue(const FullWeight& w) {
  if (w.is_diagonal()) {
    const auto d = w.diagonal_part();
    return *std::ranges::max_element(d.entries());
  }
  return eigenvalues(w).back();
}

DiagonalWeight tilde_reduction(const FullWeight& w) {
  const int d = w.dim();
  std::array<double, 3> t{};
  for (int i = 0; i < d; ++i) {
    double off = 0.0;
    for (int j = 0; j < d; ++j) {
      if (j != i) off += std::abs(w(i, j));
    }
    t[static_cast<std::size_t>(i)] = w(i, i) - off;
  }
  return DiagonalWeight(std::span<const double>(t.data(), static_cast<std::size_t>(d)));
}

bool dominates(const FullWeight& w, const DiagonalWeight& t) {
  const FullWeight diff = w.minus(t);
  const int d = w.dim();
  // Diagonal dominance with nonnegative diagonal is sufficient for PSD.
  bool dominant = true;
  double scale = 0.0;
  for (int i = 0; i < d; ++i) {
    double off = 0.0;
    for (int j = 0; j < d; ++j) {
      scale = std::max(scale, std::abs(w(i, j)));
      if (j != i) off += std::abs(diff(i, j));
    }
    scale = std::max(scale, std::abs(t[i]));
    if (diff(i, i) < off) dominant = false;
  }
  if (dominant) return true;
  return smallest_eigenvalue(diff) >= -64.0 * d * std::numeric_limits<double>::epsilon() * scale;
}

// ---------------------------------------------------------------------------
// Text forms

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) throw InvalidInput("expected a comma-separated list of numbers, got an empty string");
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      throw InvalidInput("not a finite number: '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

FullWeight parse_weight(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidInput("weight '" + std::string(text) + "' must look like diag:a,b,c or full:a11,a12,...");
  }
  const std::string_view kind = text.substr(0, colon);
  const auto values = parse_real_list(text.substr(colon + 1));
  if (kind == "diag") {
    if (values.empty() || values.size() > 3) {
      throw InvalidInput("diag weight needs 1 to 3 entries, got " + std::to_string(values.size()));
    }
    for (double v : values) {
      if (v < 0.0) throw InvalidInput("diag weight entries must be >= 0, got " + shortest(v));
    }
    return FullWeight::diagonal(values);
  }
  if (kind == "full") return FullWeight::from_upper(values);
  throw InvalidInput("unknown weight kind '" + std::string(kind) + "' (expected diag or full)");
}

std::string format_weight(const FullWeight& w) {
  std::ostringstream os;
  const int d = w.dim();
  // diag: only admits nonnegative entries.
  if (w.is_diagonal() && w.diagonal_part().is_nonnegative()) {
    os << "diag:";
    for (int i = 0; i < d; ++i) os << (i ? "," : "") << shortest(w(i, i));
  } else {
    os << "full:";
    bool first = true;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        os << (first ? "" : ",") << shortest(w(i, j));
        first = false;
      }
    }
  }
  return os.str();
}

}  // namespace fria
