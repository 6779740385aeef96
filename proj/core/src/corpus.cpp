#include "hirepath/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "hirepath/csv.hpp"
#include "hirepath/errors.hpp"

namespace fs = std::filesystem;

namespace hirepath {

namespace {

long parse_int(const csv::Table& t, std::size_t row, int col, const std::string& file) {
  const std::string& s = t.rows[row][col];
  if (s.empty()) return 0;
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw MalformedRow(file, t.line_numbers[row], "not an integer: '" + s + "'");
  return v;
}

double parse_real(const csv::Table& t, std::size_t row, int col, const std::string& file) {
  const std::string& s = t.rows[row][col];
  if (s.empty()) return 0.0;
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw MalformedRow(file, t.line_numbers[row], "not a number: '" + s + "'");
  }
}

int need_column(const csv::Table& t, const std::string& name, const std::string& file) {
  int c = t.column(name);
  if (c < 0) throw MalformedRow(file, 1, "missing column: " + name);
  return c;
}

void load_persons(Cohort& cohort, const std::string& path, bool force_incumbent) {
  csv::Table t = csv::read_file(path);
  int c_id = need_column(t, "person_id", path);
  int c_gender = need_column(t, "gender", path);
  int c_phd_u = need_column(t, "phd_university", path);
  int c_phd_s = need_column(t, "phd_subfield", path);
  int c_grad = need_column(t, "grad_year", path);
  int c_pl_u = need_column(t, "placement_university", path);
  int c_pl_s = need_column(t, "placement_subfield", path);
  int c_pl_y = need_column(t, "placement_year", path);
  int c_inc = t.column("incumbent");
  int c_collab = t.column("unique_collaborators");
  int c_adv_g = t.column("advisor_gender");
  int c_adv_p = t.column("advisor_5yr_pubs");
  int c_adv_s = t.column("advisor_seniority_years");

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Person p;
    p.person_id = t.rows[r][c_id];
    if (p.person_id.empty())
      throw MalformedRow(path, t.line_numbers[r], "empty person_id");
    if (cohort.person_index.count(p.person_id)) throw DuplicateId(p.person_id);
    p.gender = parse_gender(t.rows[r][c_gender]);
    p.phd_university = t.rows[r][c_phd_u];
    p.phd_subfield = static_cast<int>(parse_int(t, r, c_phd_s, path));
    p.grad_year = static_cast<int>(parse_int(t, r, c_grad, path));
    p.placement_university = t.rows[r][c_pl_u];
    p.placement_subfield = static_cast<int>(parse_int(t, r, c_pl_s, path));
    p.placement_year = static_cast<int>(parse_int(t, r, c_pl_y, path));
    p.incumbent = force_incumbent || (c_inc >= 0 && parse_int(t, r, c_inc, path) != 0);

    if (!valid_subfield(p.placement_subfield))
      throw MalformedRow(path, t.line_numbers[r],
                         "placement_subfield out of range: " + std::to_string(p.placement_subfield));
    if (!p.incumbent && !valid_subfield(p.phd_subfield))
      throw MalformedRow(path, t.line_numbers[r],
                         "phd_subfield out of range: " + std::to_string(p.phd_subfield));

    p.covariates.grad_year = p.grad_year;
    p.covariates.gender = p.gender;
    if (c_collab >= 0)
      p.covariates.unique_collaborators = static_cast<int>(parse_int(t, r, c_collab, path));
    if (c_adv_g >= 0) p.covariates.advisor_gender = parse_gender(t.rows[r][c_adv_g]);
    if (c_adv_p >= 0)
      p.covariates.advisor_5yr_pubs = static_cast<int>(parse_int(t, r, c_adv_p, path));
    if (c_adv_s >= 0)
      p.covariates.advisor_seniority_years = static_cast<int>(parse_int(t, r, c_adv_s, path));

    cohort.person_index.emplace(p.person_id, static_cast<int>(cohort.persons.size()));
    cohort.persons.push_back(std::move(p));
  }
}

}  // namespace

Cohort load_corpus(const std::string& dir, const IngestOptions& opts) {
  Cohort cohort;
  const std::string persons_path = dir + "/persons.csv";
  const std::string papers_path = dir + "/papers.csv";
  const std::string refs_path = dir + "/references.csv";
  const std::string baselines_path = dir + "/baselines.csv";
  const std::string incumbents_path = dir + "/incumbents.csv";

  load_persons(cohort, persons_path, false);
  if (fs::exists(incumbents_path)) load_persons(cohort, incumbents_path, true);

  {
    csv::Table t = csv::read_file(papers_path);
    int c_id = need_column(t, "paper_id", papers_path);
    int c_pid = need_column(t, "person_id", papers_path);
    int c_year = need_column(t, "pub_year", papers_path);
    int c_disc = need_column(t, "discipline_id", papers_path);
    int c_auth = need_column(t, "author_count", papers_path);
    int c_cit = t.column("citations");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      Paper p;
      p.paper_id = t.rows[r][c_id];
      if (cohort.paper_index.count(p.paper_id)) throw DuplicateId(p.paper_id);
      p.person_id = t.rows[r][c_pid];
      p.pub_year = static_cast<int>(parse_int(t, r, c_year, papers_path));
      p.discipline_id = static_cast<int>(parse_int(t, r, c_disc, papers_path));
      p.author_count = static_cast<int>(parse_int(t, r, c_auth, papers_path));
      if (c_cit >= 0) p.citations = parse_int(t, r, c_cit, papers_path);
      if (!valid_discipline(p.discipline_id))
        throw MalformedRow(papers_path, t.line_numbers[r],
                           "discipline_id out of range: " + std::to_string(p.discipline_id));
      if (p.author_count < 1)
        throw MalformedRow(papers_path, t.line_numbers[r], "author_count < 1");
      if (p.citations < 0)
        throw MalformedRow(papers_path, t.line_numbers[r], "negative citations");
      auto it = cohort.person_index.find(p.person_id);
      if (it == cohort.person_index.end())
        throw DanglingReference(p.paper_id + " -> person " + p.person_id);
      int idx = static_cast<int>(cohort.papers.size());
      cohort.paper_index.emplace(p.paper_id, idx);
      cohort.persons[it->second].paper_idx.push_back(idx);
      cohort.papers.push_back(std::move(p));
    }
  }

  {
    csv::Table t = csv::read_file(refs_path);
    int c_id = need_column(t, "paper_id", refs_path);
    int c_disc = need_column(t, "ref_discipline_id", refs_path);
    int c_count = need_column(t, "count", refs_path);
    int c_rid = t.column("ref_id");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const std::string& pid = t.rows[r][c_id];
      auto it = cohort.paper_index.find(pid);
      if (it == cohort.paper_index.end()) throw DanglingReference(pid);
      int disc = static_cast<int>(parse_int(t, r, c_disc, refs_path));
      long count = parse_int(t, r, c_count, refs_path);
      if (!valid_discipline(disc))
        throw MalformedRow(refs_path, t.line_numbers[r],
                           "ref_discipline_id out of range: " + std::to_string(disc));
      if (count < 0) throw MalformedRow(refs_path, t.line_numbers[r], "negative count");
      Paper& paper = cohort.papers[it->second];
      paper.ref_counts[disc] += count;
      if (c_rid >= 0 && !t.rows[r][c_rid].empty())
        paper.ref_ids.emplace_back(t.rows[r][c_rid], disc);
    }
  }

  if (fs::exists(baselines_path) || opts.require_baselines) {
    csv::Table t = csv::read_file(baselines_path);
    int c_disc = need_column(t, "discipline_id", baselines_path);
    int c_year = need_column(t, "year", baselines_path);
    int c_mean = need_column(t, "mean_citations", baselines_path);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      int disc = static_cast<int>(parse_int(t, r, c_disc, baselines_path));
      int year = static_cast<int>(parse_int(t, r, c_year, baselines_path));
      double mean = parse_real(t, r, c_mean, baselines_path);
      if (!valid_discipline(disc))
        throw MalformedRow(baselines_path, t.line_numbers[r], "discipline_id out of range");
      if (mean <= 0.0)
        throw MalformedRow(baselines_path, t.line_numbers[r], "baseline must be positive");
      cohort.citation_baselines[{disc, year}] = mean;
    }
  }

  compute_derived_covariates(cohort);
  return cohort;
}

void compute_derived_covariates(Cohort& cohort) {
  for (Person& person : cohort.persons) {
    if (person.incumbent) continue;
    EligiblePapers ep = eligible_papers(cohort, person);
    person.covariates.phd_pub_count = static_cast<int>(ep.productivity_papers.size());
    double sum = 0.0;
    int n = 0;
    for (int idx : ep.productivity_papers) {
      const Paper& p = cohort.papers[idx];
      auto it = cohort.citation_baselines.find({p.discipline_id, p.pub_year});
      if (it == cohort.citation_baselines.end()) continue;
      sum += static_cast<double>(p.citations) / it->second;
      ++n;
    }
    person.covariates.avg_norm_citations = n ? sum / n : 0.0;
  }
}

EligiblePapers eligible_papers(const Cohort& cohort, const Person& person) {
  EligiblePapers out;
  for (int idx : person.paper_idx) {
    const Paper& p = cohort.papers[idx];
    int rel = cohort.relative_year(person, p);
    if (p.author_count > 10 || rel < -4 || rel > 1) continue;
    out.productivity_papers.push_back(idx);
    if (p.total_refs() >= 5) out.idr_papers.push_back(idx);
  }
  return out;
}

Cohort apply_sample_filters(const Cohort& cohort, FilterReport* report) {
  FilterReport rep;
  std::vector<char> keep(cohort.persons.size(), 1);
  for (std::size_t i = 0; i < cohort.persons.size(); ++i) {
    const Person& person = cohort.persons[i];
    if (person.incumbent) continue;
    EligiblePapers ep = eligible_papers(cohort, person);
    if (ep.productivity_papers.size() > 20) {
      keep[i] = 0;
      ++rep.removed_too_many;
    } else if (ep.idr_papers.empty()) {
      keep[i] = 0;
      ++rep.removed_no_eligible;
    }
  }

  Cohort out;
  out.citation_baselines = cohort.citation_baselines;
  for (std::size_t i = 0; i < cohort.persons.size(); ++i) {
    if (!keep[i]) continue;
    Person p = cohort.persons[i];
    std::vector<int> old_papers = std::move(p.paper_idx);
    p.paper_idx.clear();
    out.person_index.emplace(p.person_id, static_cast<int>(out.persons.size()));
    out.persons.push_back(std::move(p));
    Person& np = out.persons.back();
    for (int idx : old_papers) {
      int nidx = static_cast<int>(out.papers.size());
      out.paper_index.emplace(cohort.papers[idx].paper_id, nidx);
      out.papers.push_back(cohort.papers[idx]);
      np.paper_idx.push_back(nidx);
    }
    if (!np.incumbent) ++rep.kept;
  }
  if (rep.kept == 0) throw EmptyCohort();
  if (report) *report = rep;
  return out;
}

void write_corpus(const Cohort& cohort, const std::string& dir) {
  fs::create_directories(dir);

  std::vector<int> person_order(cohort.persons.size());
  for (std::size_t i = 0; i < person_order.size(); ++i) person_order[i] = static_cast<int>(i);
  std::sort(person_order.begin(), person_order.end(), [&](int a, int b) {
    return cohort.persons[a].person_id < cohort.persons[b].person_id;
  });

  std::vector<std::vector<std::string>> rows;
  for (int i : person_order) {
    const Person& p = cohort.persons[i];
    rows.push_back({p.person_id, to_string(p.gender), p.phd_university,
                    std::to_string(p.phd_subfield), std::to_string(p.grad_year),
                    p.placement_university, std::to_string(p.placement_subfield),
                    std::to_string(p.placement_year), p.incumbent ? "1" : "0",
                    std::to_string(p.covariates.unique_collaborators),
                    to_string(p.covariates.advisor_gender),
                    std::to_string(p.covariates.advisor_5yr_pubs),
                    std::to_string(p.covariates.advisor_seniority_years)});
  }
  csv::write_file(dir + "/persons.csv",
                  {"person_id", "gender", "phd_university", "phd_subfield", "grad_year",
                   "placement_university", "placement_subfield", "placement_year", "incumbent",
                   "unique_collaborators", "advisor_gender", "advisor_5yr_pubs",
                   "advisor_seniority_years"},
                  rows);

  std::vector<int> paper_order(cohort.papers.size());
  for (std::size_t i = 0; i < paper_order.size(); ++i) paper_order[i] = static_cast<int>(i);
  std::sort(paper_order.begin(), paper_order.end(), [&](int a, int b) {
    return cohort.papers[a].paper_id < cohort.papers[b].paper_id;
  });

  rows.clear();
  std::vector<std::vector<std::string>> ref_rows;
  for (int i : paper_order) {
    const Paper& p = cohort.papers[i];
    rows.push_back({p.paper_id, p.person_id, std::to_string(p.pub_year),
                    std::to_string(p.discipline_id), std::to_string(p.author_count),
                    std::to_string(p.citations)});
    if (!p.ref_ids.empty()) {
      for (const auto& [rid, disc] : p.ref_ids)
        ref_rows.push_back({p.paper_id, std::to_string(disc), "1", rid});
    } else {
      for (const auto& [disc, count] : p.ref_counts)
        ref_rows.push_back({p.paper_id, std::to_string(disc), std::to_string(count), ""});
    }
  }
  csv::write_file(dir + "/papers.csv",
                  {"paper_id", "person_id", "pub_year", "discipline_id", "author_count",
                   "citations"},
                  rows);
  csv::write_file(dir + "/references.csv", {"paper_id", "ref_discipline_id", "count", "ref_id"},
                  ref_rows);

  rows.clear();
  char buf[64];
  for (const auto& [key, mean] : cohort.citation_baselines) {
    std::snprintf(buf, sizeof buf, "%.6g", mean);
    rows.push_back({std::to_string(key.first), std::to_string(key.second), buf});
  }
  csv::write_file(dir + "/baselines.csv", {"discipline_id", "year", "mean_citations"}, rows);
}

}  // namespace hirepath
