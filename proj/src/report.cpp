#include "bvlab/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bvlab {

namespace {

std::string percent(std::size_t a, std::size_t b) {
  if (b == 0) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << 100.0 * static_cast<double>(a) / static_cast<double>(b) << "%";
  return os.str();
}

template <class T, class Key>
T& find_or_add(std::vector<T>& v, const Key& key, auto&& match, auto&& make) {
  auto it = std::find_if(v.begin(), v.end(), [&](const T& t) { return match(t, key); });
  if (it != v.end()) return *it;
  v.push_back(make(key));
  return v.back();
}

}  // namespace

Report summarize(const std::vector<VerdictRecord>& records) {
  Report rep;
  rep.records = records.size();
  for (const auto& r : records) {
    ModelStats& ms = find_or_add(
        rep.models, r.model, [](const ModelStats& s, const std::string& k) { return s.model == k; },
        [](const std::string& k) { return ModelStats{k}; });
    ++ms.total;
    switch (r.verdict) {
      case Verdict::Yes:
        ++ms.yes;
        break;
      case Verdict::No:
        ++ms.no;
        break;
      case Verdict::Inconclusive:
        ++ms.inconclusive;
        break;
      case Verdict::Skipped:
        ++ms.skipped;
        break;
      case Verdict::Error:
        ++ms.error;
        break;
    }
    if (const auto a = r.agrees()) {
      ++ms.compared;
      if (*a) {
        ++ms.agree;
      } else if (r.verdict == Verdict::Yes) {
        ++ms.false_yes;
      } else {
        ++ms.false_no;
      }
    }

    const std::string oracle = r.oracle ? (*r.oracle ? "YES" : "NO") : "-";
    const std::pair<std::string, std::string> key{r.model, oracle};
    OracleSplit& sp = find_or_add(
        rep.splits, key,
        [](const OracleSplit& s, const std::pair<std::string, std::string>& k) { return s.model == k.first && s.oracle == k.second; },
        [](const std::pair<std::string, std::string>& k) { return OracleSplit{k.first, k.second}; });
    ++sp.instances;
    if (r.verdict == Verdict::Yes) {
      ++sp.model_yes;
    } else if (r.verdict == Verdict::No) {
      ++sp.model_no;
    } else {
      ++sp.undecided;
    }

    if (r.alpha) {
      AlphaRow& row = find_or_add(
          rep.alpha, r.n, [](const AlphaRow& a, std::size_t k) { return a.n == k; },
          [](std::size_t k) { return AlphaRow{k, {}, (k - 1) * (k - 1) + 1, 0}; });
      ++row.histogram[*r.alpha];
      row.max_alpha = std::max(row.max_alpha, *r.alpha);
    }

    if (r.model == "depletion" && r.verdict != Verdict::Skipped && r.verdict != Verdict::Error) {
      DepletionStats& d = rep.depletion;
      ++d.runs;
      const std::string status = r.details.value("status", "");
      if (status == "EMPTIED") {
        ++d.emptied;
        if (r.oracle && *r.oracle) ++d.emptied_oracle_yes;
      } else if (status == "VACUOUS") {
        ++d.vacuous;
      } else {
        ++d.survived;
      }
      if (r.oracle && !*r.oracle) ++d.oracle_no;
    }

    if (r.model == "cutloop" && (r.verdict == Verdict::Yes || r.verdict == Verdict::No || r.verdict == Verdict::Inconclusive)) {
      CutLoopStats& c = rep.cutloop;
      ++c.runs;
      if (r.verdict == Verdict::Yes) ++c.yes;
      if (r.verdict == Verdict::No) ++c.no;
      if (r.verdict == Verdict::Inconclusive) ++c.inconclusive;
      if (r.details.value("stalled", false)) ++c.stalled;
      c.total_iterations += r.iterations;
      c.max_iterations = std::max(c.max_iterations, r.iterations);
      ++c.iterations[r.iterations];
    }
  }
  std::sort(rep.splits.begin(), rep.splits.end(), [&](const OracleSplit& a, const OracleSplit& b) {
    auto pos = [&](const std::string& m) {
      return std::find_if(rep.models.begin(), rep.models.end(), [&](const ModelStats& s) { return s.model == m; }) - rep.models.begin();
    };
    if (a.model != b.model) return pos(a.model) < pos(b.model);
    return a.oracle > b.oracle;  // YES, NO, -
  });
  std::sort(rep.alpha.begin(), rep.alpha.end(), [](const AlphaRow& a, const AlphaRow& b) { return a.n < b.n; });
  return rep;
}

Report report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<VerdictRecord> records;
  std::size_t malformed = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception&) {
      ++malformed;
    }
  }
  Report rep = summarize(records);
  rep.malformed = malformed;
  return rep;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "records " << r.records << ", malformed lines skipped " << r.malformed << "\n\n";
  os << std::left << std::setw(22) << "model" << std::right << std::setw(7) << "total" << std::setw(6) << "YES"
     << std::setw(6) << "NO" << std::setw(7) << "INC" << std::setw(6) << "SKIP" << std::setw(6) << "ERR"
     << std::setw(10) << "agree" << std::setw(10) << "false-YES" << std::setw(10) << "false-NO" << "\n";
  for (const auto& m : r.models) {
    os << std::left << std::setw(22) << m.model << std::right << std::setw(7) << m.total << std::setw(6) << m.yes
       << std::setw(6) << m.no << std::setw(7) << m.inconclusive << std::setw(6) << m.skipped << std::setw(6) << m.error
       << std::setw(10) << percent(m.agree, m.compared) << std::setw(10) << m.false_yes << std::setw(10) << m.false_no
       << "\n";
  }

  os << "\n" << std::left << std::setw(22) << "model" << std::setw(8) << "oracle" << std::right << std::setw(10)
     << "instances" << std::setw(10) << "model-YES" << std::setw(10) << "model-NO" << std::setw(11) << "undecided"
     << "\n";
  for (const auto& s : r.splits) {
    os << std::left << std::setw(22) << s.model << std::setw(8) << s.oracle << std::right << std::setw(10)
       << s.instances << std::setw(10) << s.model_yes << std::setw(10) << s.model_no << std::setw(11) << s.undecided
       << "\n";
  }

  if (!r.alpha.empty()) {
    os << "\nBvN term counts of doubly stochastic relaxation optima\n";
    for (const auto& a : r.alpha) {
      os << "  n=" << a.n << " bound " << a.bound << " max " << a.max_alpha << (a.max_alpha <= a.bound ? "" : " EXCEEDS BOUND")
         << " :";
      for (const auto& [alpha, count] : a.histogram) os << " " << alpha << "x" << count;
      os << "\n";
    }
  }

  if (r.depletion.runs > 0) {
    const auto& d = r.depletion;
    os << "\ndepletion: runs " << d.runs << ", emptied " << d.emptied << ", survived " << d.survived << ", vacuous "
       << d.vacuous << ", oracle-NO instances emptied " << d.emptied << "/" << d.oracle_no
       << ", emptied despite oracle YES " << d.emptied_oracle_yes << "\n";
  }

  if (r.cutloop.runs > 0) {
    const auto& c = r.cutloop;
    os << "\ncut loop: runs " << c.runs << ", YES " << c.yes << ", NO " << c.no << ", INCONCLUSIVE " << c.inconclusive
       << " (stalled " << c.stalled << "), iterations mean " << std::fixed << std::setprecision(2)
       << static_cast<double>(c.total_iterations) / static_cast<double>(c.runs) << " max " << c.max_iterations << "\n  histogram:";
    for (const auto& [it, count] : c.iterations) os << " " << it << "x" << count;
    os << "\n";
  }

  for (const auto& m : r.models) {
    if (m.model == "convex" && m.false_yes > 0) {
      os << "\nnote: convex reports YES once a permutation point satisfies the linear relaxation; "
            "its false YES count measures how often that point fails the matrix relation itself.\n";
    }
    if (m.false_no > 0 && m.model != "cutloop" && m.model != "depletion") {
      os << "\nwarning: " << m.model << " returned NO on " << m.false_no << " oracle-YES instances\n";
    }
  }
  return os.str();
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os << "model,oracle,instances,model_yes,model_no,undecided\n";
  for (const auto& s : r.splits) {
    os << s.model << "," << s.oracle << "," << s.instances << "," << s.model_yes << "," << s.model_no << ","
       << s.undecided << "\n";
  }
  os << "\nmodel,total,yes,no,inconclusive,skipped,error,compared,agree,false_yes,false_no\n";
  for (const auto& m : r.models) {
    os << m.model << "," << m.total << "," << m.yes << "," << m.no << "," << m.inconclusive << "," << m.skipped << ","
       << m.error << "," << m.compared << "," << m.agree << "," << m.false_yes << "," << m.false_no << "\n";
  }
  return os.str();
}

}  // namespace bvlab
