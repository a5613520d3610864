#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "resprod/bibliometrics.hpp"
#include "resprod/disambiguation.hpp"

namespace resprod::testing {

struct RandomCorpus {
  StaffRegistry registry;
  disambiguation::AffiliationDictionary dictionary;
  JournalTable journals;
  std::vector<Publication> publications;
};

/// Small staff registry over `unis` universities and `areas` areas with
/// deliberately few surnames, plus publications whose bylines mix staff and
/// outsiders and whose doc types and years vary.
inline RandomCorpus random_corpus(std::mt19937_64& rng, int unis = 4, int areas = 3, int pubs = 120) {
  static const std::vector<std::string> surnames{"Rossi", "Bianchi", "Ferrari", "Esposito", "Romano",
                                                 "Colombo", "Ricci", "Marino", "Greco", "Bruno"};
  static const std::vector<std::string> firsts{"Mario", "Anna", "Luca", "Giulia", "Paolo", "Sara", "Carlo"};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  RandomCorpus c;
  std::vector<StaffMember> staff;
  int next = 0;
  for (int u = 0; u < unis; ++u) {
    const std::string uni = "U" + std::to_string(u + 1);
    c.dictionary.add("UNIV " + uni, uni);
    for (int a = 0; a < areas; ++a) {
      const int n = 2 + static_cast<int>(pick(5));
      for (int i = 0; i < n; ++i) {
        const auto rank = static_cast<Rank>(pick(3));
        staff.push_back({"s" + std::to_string(++next), surnames[pick(surnames.size())], firsts[pick(firsts.size())],
                         rank, uni, std::to_string(a + 1), 1999 + static_cast<int>(pick(2)),
                         2002 + static_cast<int>(pick(3))});
      }
    }
  }
  c.registry = StaffRegistry(staff);

  for (int j = 0; j < 6; ++j) {
    for (int y = 2000; y <= 2004; ++y) {
      if (pick(5) != 0) c.journals.set("J" + std::to_string(j), y, 0.25 * static_cast<double>(pick(17)));
    }
  }

  for (int p = 0; p < pubs; ++p) {
    Publication pub;
    pub.id = "P" + std::to_string(p + 1);
    pub.year = 2000 + static_cast<int>(pick(5));
    const std::size_t t = pick(10);
    pub.doc_type = t < 6 ? DocType::article : (t < 8 ? DocType::review : DocType::other);
    pub.journal = "J" + std::to_string(pick(7));  // J6 is never weighted
    const std::size_t n_aff = 1 + pick(2);
    for (std::size_t k = 0; k < n_aff; ++k) pub.raw_affiliations.push_back("Dept X, Univ U" + std::to_string(1 + pick(unis)));
    if (pick(8) == 0) pub.raw_affiliations.push_back("Some Foreign Institute");
    const std::size_t n_auth = 1 + pick(6);
    for (std::size_t k = 0; k < n_auth; ++k) {
      if (pick(3) == 0) {
        pub.authors.push_back("OUTSIDER" + std::to_string(pick(20)) + ", Q");
      } else {
        const auto& s = staff[pick(staff.size())];
        pub.authors.push_back(s.surname + ", " + s.first_names.substr(0, 1));
      }
    }
    c.publications.push_back(std::move(pub));
  }
  return c;
}

/// PC computed straight from the byline: for every publication in `years`
/// that counts as output, count positions matched to the cell and add b/c.
inline double brute_force_pc(const std::vector<Publication>& pubs,
                             const std::vector<disambiguation::Assignment>& assignments,
                             const StaffRegistry& registry, const DmuId& cell, const std::vector<int>& years) {
  double sum = 0.0;
  for (const auto& p : pubs) {
    if (p.doc_type == DocType::other) continue;
    if (std::find(years.begin(), years.end(), p.year) == years.end()) continue;
    std::size_t b = 0;
    for (const auto& a : assignments) {
      if (a.publication != p.id || a.outcome.kind != disambiguation::OutcomeKind::matched) continue;
      const auto* s = registry.find(a.outcome.candidates.front());
      if (s->university == cell.university && s->area == cell.area) ++b;
    }
    if (b > 0) sum += static_cast<double>(b) / static_cast<double>(p.authors.size());
  }
  return sum;
}

}  // namespace resprod::testing
