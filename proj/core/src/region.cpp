#include "symlat/region.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace symlat {

double unit_ball_volume(std::size_t dim) {
  const double h = static_cast<double>(dim) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

RegionSpec RegionSpec::ball(std::size_t n, double radius) {
  require(n >= 1, "region: n must be positive");
  require(radius > 0 && std::isfinite(radius), "region: radius must be positive");
  RegionSpec r;
  r.kind_ = Kind::ball;
  r.n_ = n;
  r.radius_ = radius;
  r.circumradius_ = radius;
  return r;
}

RegionSpec RegionSpec::ball_with_volume(std::size_t n, double volume) {
  require(volume > 0, "region: volume must be positive");
  return ball(n, std::pow(volume / unit_ball_volume(2 * n), 1.0 / (2.0 * n)));
}

RegionSpec RegionSpec::ellipsoid(const SymplecticMatrix<double>& g, double radius) {
  require(radius > 0 && std::isfinite(radius), "region: radius must be positive");
  RegionSpec r;
  r.kind_ = Kind::ellipsoid;
  r.n_ = g.n();
  r.radius_ = radius;
  r.g_ = g.matrix();
  r.g_inv_ = symplectic_inverse(g.matrix());
  r.circumradius_ = radius * operator_norm(r.g_);
  return r;
}

RegionSpec RegionSpec::box(std::vector<double> half_widths) {
  require(!half_widths.empty() && half_widths.size() % 2 == 0, "region: box needs 2n half-widths");
  double s2 = 0;
  for (double h : half_widths) {
    require(h > 0 && std::isfinite(h), "region: box half-widths must be positive");
    s2 += h * h;
  }
  RegionSpec r;
  r.kind_ = Kind::box;
  r.n_ = half_widths.size() / 2;
  r.half_widths_ = std::move(half_widths);
  r.circumradius_ = std::sqrt(s2);
  return r;
}

RegionSpec RegionSpec::cube_with_volume(std::size_t n, double volume) {
  require(n >= 1 && volume > 0, "region: cube needs n >= 1 and positive volume");
  const double h = 0.5 * std::pow(volume, 1.0 / (2.0 * n));
  return box(std::vector<double>(2 * n, h));
}

bool RegionSpec::contains(const double* x) const {
  const std::size_t d = dim();
  switch (kind_) {
    case Kind::ball: {
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) s += x[i] * x[i];
      return s <= radius_ * radius_;
    }
    case Kind::ellipsoid: {
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) {
        double t = 0;
        for (std::size_t j = 0; j < d; ++j) t += g_inv_(i, j) * x[j];
        s += t * t;
      }
      return s <= radius_ * radius_;
    }
    case Kind::box:
      for (std::size_t i = 0; i < d; ++i)
        if (std::fabs(x[i]) > half_widths_[i]) return false;
      return true;
  }
  return false;
}

double RegionSpec::volume() const {
  switch (kind_) {
    case Kind::ball:
    case Kind::ellipsoid: return unit_ball_volume(dim()) * std::pow(radius_, static_cast<double>(dim()));
    case Kind::box: {
      double v = 1;
      for (double h : half_widths_) v *= 2 * h;
      return v;
    }
  }
  return 0;
}

double RegionSpec::circumradius() const { return circumradius_; }

void RegionSpec::sample(Rng& rng, double* out) const {
  const std::size_t d = dim();
  if (kind_ == Kind::box) {
    for (std::size_t i = 0; i < d; ++i) out[i] = rng.uniform(-half_widths_[i], half_widths_[i]);
    return;
  }
  double buf[16];
  double s = 0;
  for (std::size_t i = 0; i < d; ++i) {
    buf[i] = rng.normal();
    s += buf[i] * buf[i];
  }
  const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)) / std::sqrt(s);
  for (std::size_t i = 0; i < d; ++i) buf[i] *= r;
  if (kind_ == Kind::ball) {
    for (std::size_t i = 0; i < d; ++i) out[i] = buf[i];
    return;
  }
  for (std::size_t i = 0; i < d; ++i) {
    double t = 0;
    for (std::size_t j = 0; j < d; ++j) t += g_(i, j) * buf[j];
    out[i] = t;
  }
}

RegionSpec RegionSpec::scaled(double c) const {
  require(c > 0, "region: scale must be positive");
  RegionSpec r(*this);
  r.radius_ *= c;
  for (double& h : r.half_widths_) h *= c;
  r.circumradius_ *= c;
  return r;
}

std::string RegionSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::ball: os << "ball(n=" << n_ << ",r=" << radius_ << ")"; break;
    case Kind::ellipsoid: os << "ellipsoid(n=" << n_ << ",r=" << radius_ << ")"; break;
    case Kind::box:
      os << "box(";
      for (std::size_t i = 0; i < half_widths_.size(); ++i) os << (i ? "," : "") << half_widths_[i];
      os << ")";
      break;
  }
  return os.str();
}

namespace {

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError("region: bad number for '" + key + "': '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct ParsedSpec {
  std::string shape;
  std::map<std::string, std::string> kv;
};

ParsedSpec parse_spec(const std::string& text) {
  ParsedSpec p;
  const auto colon = text.find(':');
  require(colon != std::string::npos, "region: expected '<shape>:key=value,...', got '" + text + "'");
  p.shape = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  // Keys are separated by ',' unless the value is a ';'-list or a box width list.
  std::string key, value;
  bool in_key = true;
  auto flush = [&]() {
    if (key.empty() && value.empty()) return;
    require(!key.empty(), "region: empty key in '" + text + "'");
    require(!p.kv.count(key), "region: duplicate key '" + key + "'");
    p.kv[key] = value;
    key.clear();
    value.clear();
  };
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const char c = rest[i];
    if (in_key) {
      if (c == '=') {
        in_key = false;
      } else {
        key.push_back(c);
      }
      continue;
    }
    if (c == ',') {
      // A comma starts a new key only if a '=' follows before the next ','.
      const auto next_eq = rest.find('=', i + 1);
      const auto next_comma = rest.find(',', i + 1);
      if (next_eq != std::string::npos && (next_comma == std::string::npos || next_eq < next_comma)) {
        flush();
        in_key = true;
        continue;
      }
    }
    value.push_back(c);
  }
  require(!in_key || key.empty(), "region: missing '=' in '" + text + "'");
  flush();
  return p;
}

void require_only(const ParsedSpec& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p.kv) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    require(ok, "region: unknown key '" + k + "' for shape '" + p.shape + "'");
  }
}

SymplecticMatrix<double> stretch_rotation(std::size_t n, double stretch, double angle) {
  require(stretch > 0, "region: stretch must be positive");
  Matrix<double> g = Matrix<double>::identity(2 * n);
  const double a = std::sqrt(stretch), c = std::cos(angle), s = std::sin(angle);
  // Rotation in the (x_1, y_1) plane after diag(a, 1/a).
  g(0, 0) = c * a;
  g(0, n) = -s / a;
  g(n, 0) = s * a;
  g(n, n) = c / a;
  return SymplecticMatrix<double>(g);
}

RegionSpec build(const ParsedSpec& p, std::size_t n, const std::string& vol_text) {
  auto get = [&](const char* k) -> const std::string* {
    auto it = p.kv.find(k);
    return it == p.kv.end() ? nullptr : &it->second;
  };
  const std::string* vol = vol_text.empty() ? get("vol") : &vol_text;
  if (p.shape == "ball" || p.shape == "disc") {
    require_only(p, {"vol", "r"});
    require((vol != nullptr) != (get("r") != nullptr), "region: ball needs exactly one of vol= or r=");
    if (vol) return RegionSpec::ball_with_volume(n, parse_double(*vol, "vol"));
    return RegionSpec::ball(n, parse_double(*get("r"), "r"));
  }
  if (p.shape == "box" || p.shape == "square") {
    require_only(p, {"vol", "w"});
    require((vol != nullptr) != (get("w") != nullptr), "region: box needs exactly one of vol= or w=");
    if (vol) return RegionSpec::cube_with_volume(n, parse_double(*vol, "vol"));
    std::vector<double> w;
    for (const auto& part : split(*get("w"), ',')) w.push_back(parse_double(part, "w"));
    if (w.size() == 1) w.assign(2 * n, w[0]);
    require(w.size() == 2 * n, "region: box needs 1 or 2n half-widths");
    return RegionSpec::box(std::move(w));
  }
  if (p.shape == "ellipse" || p.shape == "ellipsoid") {
    require_only(p, {"vol", "r", "stretch", "angle"});
    require((vol != nullptr) != (get("r") != nullptr), "region: ellipse needs exactly one of vol= or r=");
    const double stretch = get("stretch") ? parse_double(*get("stretch"), "stretch") : 4.0;
    const double angle = get("angle") ? parse_double(*get("angle"), "angle") : 0.0;
    const double r = vol ? std::pow(parse_double(*vol, "vol") / unit_ball_volume(2 * n), 1.0 / (2.0 * n))
                         : parse_double(*get("r"), "r");
    return RegionSpec::ellipsoid(stretch_rotation(n, stretch, angle), r);
  }
  throw InputError("region: unknown shape '" + p.shape + "' (expected ball, box or ellipse)");
}

}  // namespace

RegionSpec parse_region(const std::string& text, std::size_t n) { return build(parse_spec(text), n, ""); }

std::vector<RegionSpec> parse_family(const std::string& text, std::size_t n) {
  const ParsedSpec p = parse_spec(text);
  const char* key = p.kv.count("vol") ? "vol" : p.kv.count("r") ? "r" : nullptr;
  require(key != nullptr, "family: expected vol=v1;v2;... or r=r1;r2;...");
  std::vector<RegionSpec> out;
  for (const auto& v : split(p.kv.at(key), ';')) {
    ParsedSpec rung = p;
    rung.kv[key] = v;
    out.push_back(build(rung, n, ""));
  }
  return out;
}

}  // namespace symlat
