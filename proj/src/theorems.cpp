#include "torlink/theorems.hpp"

#include <json.hpp>
#include <sstream>

namespace torlink {

bool admissible_H(std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  if (m < 4 || n < 2) return false;
  if (p > m - 1 || q > n) return false;
  if (p > n + 1 || q > m - 2) return false;
  bool ext_i = (p == n + 1);
  bool ext_ii = (q == m - 2);
  bool ext_iii = (p == m - 1 && q == n);
  if (ext_i || ext_ii || ext_iii) return ext_i && ext_ii && ext_iii;
  if (p + 1 > n || q + 4 > m) return false;  // p <= n-1 and q <= m-4
  if (p == n - 1 && (q % 2) != ((m - 4) % 2)) return false;
  if (q == m - 4 && (p % 2) != ((n - 1) % 2)) return false;
  return true;
}

namespace {

// the four-, five-, and type-two/three-generator restrictions on class H
bool small_case_H(std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  if (m == 4) {
    if (n % 2 == 1) return false;                      // odd type forces class T
    if (n == 2) return p == 3 && q == 2;               // H(3,2)
    return p == 3 && q == 0;                           // n >= 4 even: H(3,0)
  }
  if (n == 2 && m >= 5) {
    // positive p forces H(1,2) with even m; otherwise p = 0
    if (p >= 1) return p == 1 && q == 2 && m % 2 == 0;
    return true;
  }
  if (n == 3 && m >= 5 && p == 3) return false;
  return true;
}

}  // namespace

Admissibility admissible_class(const ClassQuery& query) {
  const auto& [label, m, n] = query;
  Admissibility out;
  switch (label.kind) {
    case ClassLabel::Kind::C3:
      out.ok = (m == 3 && n == 1);
      return out;
    case ClassLabel::Kind::B:
      out.ok = m >= 5 && n >= 2 && !(m == 5 && n != 2) && !(n == 2 && m % 2 == 0);
      return out;
    case ClassLabel::Kind::T:
      if (m == 4)
        out.ok = (n >= 3 && n % 2 == 1);
      else
        out.ok = m >= 5 && n >= 4;
      return out;
    case ClassLabel::Kind::G: {
      std::size_t r = label.r;
      if (n == 1) {
        // Gorenstein: class G(m) with odd m >= 5
        out.ok = (r == m && m >= 5 && m % 2 == 1);
        return out;
      }
      out.ok = m >= 6 && r >= 2 && r <= m - 2;
      if (out.ok && m == 6 && n >= 3 && r != 2) out.ok = false;  // six-generated G forces r = 2
      if (!out.ok) return out;
      if (n == 2 && !(r <= m - 5 || r == m - 3))
        out.advisories.push_back("conjecture (a): expected 2 <= r <= m-5 or r = m-3 for n = 2");
      if (n >= 3 && !(r <= m - 4))
        out.advisories.push_back("conjecture (b): expected r <= m-4 for n >= 3");
      return out;
    }
    case ClassLabel::Kind::H:
      out.ok = admissible_H(m, n, label.p, label.q) && small_case_H(m, n, label.p, label.q);
      return out;
  }
  return out;
}

std::vector<ClassLabel> grid(std::size_t m, std::size_t n) {
  if (m < 3 || n < 1) throw Error(Errc::bad_input, "grid: need m >= 3 and n >= 1");
  std::vector<ClassLabel> out;
  auto try_label = [&](const ClassLabel& L) {
    if (admissible_class({L, m, n}).ok) out.push_back(L);
  };
  try_label(ClassLabel::C3());
  try_label(ClassLabel::B());
  try_label(ClassLabel::T());
  for (std::size_t r = 2; r <= m; ++r) try_label(ClassLabel::G(r));
  for (std::size_t q = 0; q <= n; ++q)
    for (std::size_t p = 0; p + 1 <= m; ++p) try_label(ClassLabel::H(p, q));
  return out;
}

std::size_t total_betti(std::size_t m, std::size_t n) {
  if (m < 3 || n < 1) throw Error(Errc::bad_input, "total_betti: need m >= 3 and n >= 1");
  return 2 * (m + n);
}

std::string grid_text(std::size_t m, std::size_t n) {
  auto labels = grid(m, n);
  std::vector<std::vector<bool>> h(n + 1, std::vector<bool>(m, false));
  std::vector<std::string> others;
  for (const auto& L : labels) {
    if (L.kind == ClassLabel::Kind::H)
      h[L.q][L.p] = true;
    else
      others.push_back(L.str());
  }
  std::ostringstream os;
  os << "grid m=" << m << " n=" << n << " (H classes: columns p = 0.." << m - 1
     << ", rows q = 0.." << n << ", top row q = " << n << ")\n";
  for (std::size_t q = n + 1; q-- > 0;) {
    os << "q=" << q << " |";
    for (std::size_t p = 0; p < m; ++p) {
      if (h[q][p]) {
        std::string cell = "H(" + std::to_string(p) + "," + std::to_string(q) + ")";
        os << " " << cell;
      } else {
        os << " .";
      }
    }
    os << "\n";
  }
  if (!others.empty()) {
    os << "also:";
    for (const auto& s : others) os << " " << s;
    os << "\n";
  }
  return os.str();
}

std::string grid_csv(std::size_t m, std::size_t n) {
  std::ostringstream os;
  os << "m,n,label\n";
  for (const auto& L : grid(m, n)) os << m << "," << n << ",\"" << L.str() << "\"\n";
  return os.str();
}

std::string grid_json(std::size_t m, std::size_t n) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& L : grid(m, n)) {
    nlohmann::json rec;
    rec["label"] = L.str();
    switch (L.kind) {
      case ClassLabel::Kind::B:
        rec["kind"] = "B";
        break;
      case ClassLabel::Kind::C3:
        rec["kind"] = "C3";
        break;
      case ClassLabel::Kind::T:
        rec["kind"] = "T";
        break;
      case ClassLabel::Kind::G:
        rec["kind"] = "G";
        rec["r"] = L.r;
        break;
      case ClassLabel::Kind::H:
        rec["kind"] = "H";
        rec["p"] = L.p;
        rec["q"] = L.q;
        break;
    }
    arr.push_back(rec);
  }
  nlohmann::json j;
  j["m"] = m;
  j["n"] = n;
  j["classes"] = arr;
  return j.dump(2);
}

}  // namespace torlink
