#include "resprod/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "resprod/csv.hpp"
#include "resprod/errors.hpp"

namespace resprod::synthetic {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  bool chance(double p) { return uniform() < p; }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string> kSurnames{
    "Rossi",   "Russo",    "Ferrari", "Esposito", "Bianchi", "Romano",  "Colombo", "Ricci",   "Marino",
    "Greco",   "Bruno",    "Gallo",   "Conti",    "De Luca", "Mancini", "Costa",   "Giordano", "Rizzo",
    "Lombardi", "Moretti", "Barbieri", "Fontana", "Santoro", "Mariani", "Rinaldi", "Caruso",  "Ferrara",
    "Galli",   "Martini",  "Leone",   "Longo",    "Gentile", "Martinelli", "Vitale", "Lombardo", "Serra",
    "Coppola", "De Santis", "D'Angelo", "Marchetti", "Parisi", "Villa",  "Conte",   "Ferraro", "Ferri",
    "Fabbri",  "Bianco",   "Marini",  "Grasso",   "Valentini", "Messina", "Sala",  "De Angelis", "Gatti",
    "Pellegrini", "Palumbo", "Sanna", "Farina",   "Rizzi",   "Monti",   "Cattaneo", "Morelli", "Amato",
    "Silvestri", "Mazza",  "Testa",   "Grassi",   "Pellegrino", "Carbone", "Giuliani", "Benedetti", "Barone",
    "Rossetti", "Caputo",  "Montanari", "Guerra", "Palmieri", "Bernardi", "Martino", "Fiore",   "De Rosa",
    "Ferretti", "Bellini", "Basile",   "Riva",    "Donati",  "Piras",   "Vitali",  "Battaglia", "Sartori",
    "Neri",    "Costantini", "Milani", "Pagano",  "Ruggiero", "Sorrentino", "D'Amico", "Orlando", "Damico",
    "Negri",   "Nicolò",   "Cocco",   "Zanetti",  "Mele",    "Fumagalli", "Bertolini", "Ventura", "Ferrero"};

const std::vector<std::string> kFirstNames{
    "Mario",  "Giuseppe", "Giovanni", "Luca",    "Marco",  "Andrea",  "Francesco", "Paolo",   "Roberto",
    "Stefano", "Alessandro", "Antonio", "Massimo", "Giorgio", "Carlo", "Enrico",   "Fabio",   "Maria",
    "Anna",   "Giulia",   "Laura",    "Paola",   "Sara",   "Chiara",  "Francesca", "Elena",  "Silvia",
    "Valeria", "Marta",   "Federica", "Alessandra", "Cristina", "Lucia", "Gian Luca", "Maria Anna",
    "Pier Paolo", "Anna Maria", "Rosa",  "Emanuele", "Daniele"};

const std::vector<std::string> kSyllables{"al", "ba", "ce", "do", "fi", "ga", "le", "mo", "na", "pe", "ri",
                                          "sa", "te", "vo", "za", "lu", "ca", "ne", "to", "ra", "si", "ve"};

const std::vector<std::string> kDepartments{"Dept Math",      "Dept Phys",    "Dipartimento Chim",
                                            "Dept Biol Sci",  "Dept Med",     "Dept Earth Sci",
                                            "Ist Agr",        "Dept Engn",    "Dip Sci Farmaco"};

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string upper_ascii(const std::string& s) {
  std::string out;
  for (unsigned char c : s) out.push_back(c < 0x80 ? static_cast<char>(std::toupper(c)) : static_cast<char>(c));
  return out;
}

std::string token_of(const std::string& surname, const std::string& first, Rng& rng) {
  std::string initials;
  bool start = true;
  for (char c : first) {
    if (c == ' ' || c == '-') {
      start = true;
    } else if (start) {
      initials.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      start = false;
    }
  }
  // Bylines often keep only the first initial.
  if (initials.size() > 1 && rng.chance(0.3)) initials.resize(1);
  return upper_ascii(surname) + ", " + initials;
}

const std::vector<std::string> kSurnameEndings{"ini", "etti", "one", "ari", "elli", "ucci", "ato", "esi"};

// Mostly invented surnames so homonyms stay a minority; the common pool keeps some.
std::string surname_of(Rng& rng) {
  if (rng.chance(0.3)) return rng.pick(kSurnames);
  std::string s = rng.pick(kSyllables);
  s += rng.pick(kSyllables);
  s += rng.pick(kSurnameEndings);
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct Member {
  std::string id;
  std::string surname;
  std::string first;
  std::size_t uni;
  int area;
};

}  // namespace

ingest::InputTexts generate(const Spec& spec) {
  if (spec.areas < 1 || spec.universities < 1 || spec.first_year > spec.last_year || spec.lag < 0) {
    throw StructuralError("synthetic spec needs >= 1 area, >= 1 university and a non-empty year range");
  }
  Rng rng(spec.seed);

  std::vector<std::string> uni_names;
  std::set<std::string> used;
  while (static_cast<int>(uni_names.size()) < spec.universities) {
    std::string n;
    for (int s = 0; s < 3; ++s) n += rng.pick(kSyllables);
    n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
    if (used.insert(n).second) uni_names.push_back(n);
  }
  auto uni_id = [](std::size_t u) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U%02zu", u + 1);
    return std::string(buf);
  };

  const int snap_first = spec.first_year - spec.lag;
  const int snap_last = spec.last_year - spec.lag;

  std::string staff_csv = csv::format_row({"staff_id", "surname", "first_names", "rank", "university_id", "area_id",
                                           "year_from", "year_to"}) + "\n";
  std::string funding_csv = csv::format_row({"university_id", "area_id", "year", "prin_keur"}) + "\n";
  std::vector<Member> members;
  std::vector<double> cell_productivity;  // by member
  std::vector<std::vector<std::size_t>> cell_members;
  int next_staff = 0;
  for (std::size_t u = 0; u < uni_names.size(); ++u) {
    const double uni_size = std::exp(0.5 * rng.normal());
    for (int a = 1; a <= spec.areas; ++a) {
      if (!rng.chance(0.85)) continue;
      const double size = uni_size * std::exp(0.6 * rng.normal());
      const int n = 1 + static_cast<int>(std::floor(14.0 * size));
      const double productivity = std::exp(0.4 * rng.normal());
      std::vector<std::size_t> here;
      for (int i = 0; i < n; ++i) {
        const double r = rng.uniform();
        const char* rank = r < 0.3 ? "FP" : (r < 0.65 ? "AP" : "RF");
        int from = snap_first - 1 - static_cast<int>(rng.below(12));
        int to = snap_last + 2 + static_cast<int>(rng.below(6));
        if (rng.chance(0.12)) from = snap_first + static_cast<int>(rng.below(static_cast<std::size_t>(snap_last - snap_first + 1)));
        if (rng.chance(0.08)) to = std::max(from, snap_first + static_cast<int>(rng.below(static_cast<std::size_t>(snap_last - snap_first + 1))));
        char id[16];
        std::snprintf(id, sizeof id, "S%05d", ++next_staff);
        Member m{id, surname_of(rng), rng.pick(kFirstNames), u, a};
        staff_csv += csv::format_row({m.id, m.surname, m.first, rank, uni_id(u), std::to_string(a),
                                      std::to_string(from), std::to_string(to)}) + "\n";
        here.push_back(members.size());
        members.push_back(std::move(m));
        cell_productivity.push_back(productivity);
      }
      cell_members.push_back(here);
      for (int y = snap_first; y <= snap_last; ++y) {
        const double amount = rng.chance(0.2) ? 0.0 : 6.0 * n * std::exp(0.8 * rng.normal());
        funding_csv += csv::format_row({uni_id(u), std::to_string(a), std::to_string(y), fmt2(amount)}) + "\n";
      }
    }
  }

  std::string aff_csv = csv::format_row({"raw_pattern", "university_id"}) + "\n";
  for (std::size_t u = 0; u < uni_names.size(); ++u) {
    const std::string up = upper_ascii(uni_names[u]);
    for (const auto& p : {"UNIV " + up, "UNIVERSITA DI " + up, "UNIVERSITY OF " + up}) {
      aff_csv += csv::format_row({p, uni_id(u)}) + "\n";
    }
  }

  const int journals = 150;
  std::string journal_csv = csv::format_row({"journal_id", "year", "impact_weight"}) + "\n";
  for (int j = 1; j <= journals; ++j) {
    const double base = std::exp(0.7 * rng.normal());
    char id[16];
    std::snprintf(id, sizeof id, "J%03d", j);
    for (int y = spec.first_year - 1; y <= spec.last_year + 1; ++y) {
      if (rng.chance(0.03)) continue;
      journal_csv += csv::format_row({id, std::to_string(y), fmt3(base * (0.9 + 0.2 * rng.uniform()))}) + "\n";
    }
  }

  auto affiliation_of = [&](std::size_t u) {
    const auto& name = uni_names[u];
    const double r = rng.uniform();
    const std::string dept = rng.pick(kDepartments);
    if (r < 0.55) {
      const std::size_t zip = 10000 + rng.below(89999);
      return dept + ", Univ " + name + ", I-" + std::to_string(zip);
    }
    if (r < 0.8) return "Universit\xC3\xA0 di " + name;
    return "University of " + name + ", " + dept;
  };

  std::string pub_csv =
      csv::format_row({"pub_id", "year", "doc_type", "journal_id", "authors", "raw_affiliations"}) + "\n";
  int next_pub = 0;
  for (const auto& here : cell_members) {
    for (std::size_t lead : here) {
      for (int y = spec.first_year - 1; y <= spec.last_year + 1; ++y) {
        const double mean = spec.publications_per_staff_year * cell_productivity[lead];
        // Geometric-like count with the requested mean.
        int count = 0;
        while (rng.uniform() < mean / (1.0 + mean) && count < 12) ++count;
        for (int k = 0; k < count; ++k) {
          std::vector<std::string> authors{token_of(members[lead].surname, members[lead].first, rng)};
          std::vector<std::size_t> unis{members[lead].uni};
          std::set<std::size_t> on_byline{lead};
          const std::size_t local = rng.below(3);
          for (std::size_t i = 0; i < local && here.size() > 1; ++i) {
            const std::size_t pick = here[rng.below(here.size())];
            if (!on_byline.insert(pick).second) continue;
            authors.push_back(token_of(members[pick].surname, members[pick].first, rng));
          }
          if (rng.chance(0.25)) {
            const std::size_t pick = rng.below(members.size());
            if (on_byline.insert(pick).second) {
              authors.push_back(token_of(members[pick].surname, members[pick].first, rng));
              unis.push_back(members[pick].uni);
            }
          }
          const std::size_t outsiders = rng.below(3);
          for (std::size_t i = 0; i < outsiders; ++i) {
            const std::string surname = upper_ascii(rng.pick(kSurnames));
            const char initial = static_cast<char>('A' + rng.below(26));
            authors.push_back(surname + "X, " + initial);
          }
          std::vector<std::string> affs;
          for (std::size_t u : unis) affs.push_back(affiliation_of(u));
          if (rng.chance(0.2)) affs.push_back("Max Planck Inst, D-80805 Munich, Germany");

          const double t = rng.uniform();
          const char* type = t < 0.85 ? "Article" : (t < 0.95 ? "Review" : "Letter");
          char jid[16];
          std::snprintf(jid, sizeof jid, "J%03d", 1 + static_cast<int>(rng.below(journals + 3)));
          char pid[16];
          std::snprintf(pid, sizeof pid, "P%06d", ++next_pub);
          std::string a_field, f_field;
          for (const auto& a : authors) a_field += (a_field.empty() ? "" : "; ") + a;
          for (const auto& f : affs) f_field += (f_field.empty() ? "" : "; ") + f;
          pub_csv += csv::format_row({pid, std::to_string(y), type, jid, a_field, f_field}) + "\n";
        }
      }
    }
  }

  return {{"staff.csv", std::move(staff_csv)},
          {"publications.csv", std::move(pub_csv)},
          {"journals.csv", std::move(journal_csv)},
          {"funding.csv", std::move(funding_csv)},
          {"affiliations.csv", std::move(aff_csv)}};
}

void write(const ingest::InputTexts& texts, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto* f : {&texts.staff, &texts.publications, &texts.journals, &texts.funding, &texts.affiliations}) {
    std::ofstream out(dir / f->name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir / f->name).string());
    out << f->content;
  }
}

}  // namespace resprod::synthetic
