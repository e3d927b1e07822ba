#pragma once

// Reference Levenshtein distance over code points, with its own UTF-8
// decoder. Full-matrix DP; slow on purpose.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

inline std::vector<unsigned> DecodeUtf8(std::string_view s) {
  std::vector<unsigned> out;
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    unsigned cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      extra = 2;
    } else {
      cp = c & 0x07;
      extra = 3;
    }
    for (int k = 1; k <= extra && i + k < s.size(); ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

inline size_t Levenshtein(std::string_view a, std::string_view b) {
  std::vector<unsigned> x = DecodeUtf8(a), y = DecodeUtf8(b);
  std::vector<std::vector<size_t>> d(x.size() + 1, std::vector<size_t>(y.size() + 1));
  for (size_t i = 0; i <= x.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= y.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    for (size_t j = 1; j <= y.size(); ++j) {
      size_t sub = d[i - 1][j - 1] + (x[i - 1] != y[j - 1]);
      d[i][j] = std::min(sub, std::min(d[i - 1][j], d[i][j - 1]) + 1);
    }
  }
  return d[x.size()][y.size()];
}

// For inputs already lowercased with single spaces.
inline double EditRatio(std::string_view a, std::string_view b) {
  size_t n = std::max(DecodeUtf8(a).size(), DecodeUtf8(b).size());
  if (n == 0) return 1.0;
  return 1.0 - static_cast<double>(Levenshtein(a, b)) / static_cast<double>(n);
}

}  // namespace oracle
