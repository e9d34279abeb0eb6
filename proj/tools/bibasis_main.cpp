#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bibasis/cache.hpp"
#include "bibasis/char_oracle.hpp"
#include "bibasis/coord_ring.hpp"
#include "bibasis/crystal.hpp"
#include "bibasis/matq.hpp"
#include "bibasis/measures.hpp"
#include "bibasis/preproj.hpp"

using namespace bibasis;

namespace {

std::string fmt_longs(const std::vector<long>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

std::string fmt_word(const Word& w) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << "]";
  return os.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// key = value lines; '#' starts a comment; only type and rank are read
struct ConfigDefaults {
  std::string type = "A";
  int rank = 2;
};

ConfigDefaults read_config(const std::string& path) {
  ConfigDefaults d;
  std::ifstream in(path);
  if (!in) return d;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "type") d.type = val;
    else if (key == "rank") d.rank = std::stoi(val);
  }
  return d;
}

CartanData cartan_for(const std::string& type, int rank) {
  return CartanData::parse(type + std::to_string(rank));
}

void need_simply_laced(const CartanData& cd) {
  if (!simply_laced(cd))
    throw std::invalid_argument("crystal operations need a simply laced type, got " +
                                cd.name);
}

// height of lambda - w0(lambda) in root coordinates: enough depth for B(lambda)
long blambda_depth(const CartanData& cd, const Weight& lambda) {
  Weight gap = sub_w(lambda, cd.w0_weight(lambda));
  MatQ c(cd.rank, cd.rank);
  for (int i = 1; i <= cd.rank; ++i)
    for (int j = 1; j <= cd.rank; ++j) c(i - 1, j - 1) = cd.a(i, j);
  std::vector<Rat> rhs;
  for (long g : gap) rhs.emplace_back(g);
  auto sol = c.transpose().solve(rhs);
  if (!sol) throw std::invalid_argument("lambda is not in the weight lattice span");
  Rat h(0);
  for (const Rat& x : *sol) h += x;
  if (h.get_den() != 1 || h < 0)
    throw std::invalid_argument("lambda must be dominant integral");
  return h.get_num().get_si();
}

Weight parse_dominant(const CartanData& cd, const std::vector<long>& v,
                      const char* what) {
  if ((int)v.size() != cd.rank)
    throw std::invalid_argument(std::string(what) + " needs " +
                                std::to_string(cd.rank) + " coordinates");
  for (long x : v)
    if (x < 0)
      throw std::invalid_argument(std::string(what) + " must be dominant (entries >= 0)");
  return v;
}

CoordRing ring_for_group(const std::string& group) {
  if (group == "sl2") return CoordRing::make(2);
  if (group == "sl3") return CoordRing::make(3);
  throw std::invalid_argument("unknown group '" + group + "', expected sl2 or sl3");
}

// sl2 keys look like x:n; sl3 keys like x:a,b,c or y:a,b,c meaning
// x^a z^b w^c resp. y^a z^b w^c with z the corner entry and w = xy - z
MultiPoly element_from_key(const CoordRing& ring, const std::string& key) {
  auto bad = [&key] {
    return std::invalid_argument("bad element key '" + key +
                                 "', expected x:n (sl2) or x:a,b,c / y:a,b,c (sl3)");
  };
  auto colon = key.find(':');
  if (colon == std::string::npos) throw bad();
  std::string side = key.substr(0, colon);
  std::vector<int> e;
  std::string rest = key.substr(colon + 1);
  std::istringstream is(rest);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(piece, &used);
      if (used != piece.size() || v < 0) throw bad();
      e.push_back(v);
    } catch (const std::invalid_argument&) {
      throw bad();
    } catch (const std::out_of_range&) {
      throw bad();
    }
  }
  if (ring.n() == 2) {
    if (side != "x" || e.size() != 1) throw bad();
    return ring.coordinate(1, 2).pow(e[0]);
  }
  if ((side != "x" && side != "y") || e.size() != 3) throw bad();
  MultiPoly x = ring.coordinate(1, 2);
  MultiPoly y = ring.coordinate(2, 3);
  MultiPoly z = ring.coordinate(1, 3);
  MultiPoly w = x * y - z;
  MultiPoly head = (side == "x") ? x : y;
  return head.pow(e[0]) * z.pow(e[1]) * w.pow(e[2]);
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

// compute-or-fetch; cache trouble is reported but never blocks the result
void emit_cached(const std::string& key, const std::function<std::string()>& compute) {
  Cache cache;
  try {
    if (auto hit = cache.get(key)) {
      std::cout << *hit;
      return;
    }
  } catch (const std::exception& e) {
    std::cerr << "cache warning: " << e.what() << "\n";
  }
  std::string payload = with_newline(compute());
  try {
    cache.put(key, payload);
  } catch (const std::exception& e) {
    std::cerr << "cache warning: " << e.what() << "\n";
  }
  std::cout << payload;
}

int run_binf(const CartanData& cd, long depth, const std::string& format) {
  need_simply_laced(cd);
  std::string key = "binf|" + cd.name + "|" + std::to_string(depth) + "|" + format;
  emit_cached(key, [&] {
    CrystalGraph g = enumerate_binf(cd, depth);
    return format == "dot" ? crystal_to_dot(cd, g) : crystal_to_json(cd, g);
  });
  return 0;
}

int run_blambda(const CartanData& cd, const Weight& lambda) {
  need_simply_laced(cd);
  std::string key = "blambda|" + cd.name + "|" + fmt_longs(lambda);
  emit_cached(key, [&] {
    CrystalGraph g = enumerate_binf(cd, blambda_depth(cd, lambda));
    std::vector<int> nodes = b_lambda_nodes(cd, g, lambda);
    std::vector<BinfElement> elems;
    for (int i : nodes) elems.push_back(g.nodes[(std::size_t)i]);
    std::sort(elems.begin(), elems.end());
    std::ostringstream os;
    os << "{\"schema\":\"blambda/1\",\"cartan\":\"" << cd.name
       << "\",\"lambda\":" << fmt_longs(lambda) << ",\"count\":" << elems.size()
       << ",\"elements\":[";
    for (std::size_t i = 0; i < elems.size(); ++i)
      os << (i ? "," : "") << fmt_longs(elems[i].data);
    os << "]}";
    return os.str();
  });
  return 0;
}

int run_mult_weight(const CartanData& cd, const Weight& lambda, const Weight& mu) {
  auto ch = character(cd, lambda);
  auto it = ch.find(mu);
  long long m = it == ch.end() ? 0 : it->second;
  std::cout << "{\"schema\":\"mult/1\",\"kind\":\"weight\",\"cartan\":\"" << cd.name
            << "\",\"lambda\":" << fmt_longs(lambda) << ",\"mu\":" << fmt_longs(mu)
            << ",\"value\":" << m << "}\n";
  return 0;
}

int run_mult_tensor(const CartanData& cd, const Weight& lambda, const Weight& mu,
                    const std::optional<Weight>& nu) {
  need_simply_laced(cd);
  std::ostringstream os;
  os << "{\"schema\":\"mult/1\",\"kind\":\"tensor\",\"cartan\":\"" << cd.name
     << "\",\"lambda\":" << fmt_longs(lambda) << ",\"mu\":" << fmt_longs(mu);
  if (nu) {
    os << ",\"nu\":" << fmt_longs(*nu)
       << ",\"value\":" << lr_multiplicity(cd, lambda, mu, *nu);
  } else {
    // candidates: nu = lambda + (weight of V(mu)), kept when dominant
    std::map<Weight, long> table;
    for (const auto& [w, m] : character(cd, mu)) {
      Weight cand = add_w(lambda, w);
      if (!cd.dominant(cand)) continue;
      long c = lr_multiplicity(cd, lambda, mu, cand);
      if (c > 0) table[cand] = c;
    }
    os << ",\"table\":[";
    bool first = true;
    for (const auto& [v, c] : table) {
      os << (first ? "" : ",") << "{\"nu\":" << fmt_longs(v) << ",\"value\":" << c << "}";
      first = false;
    }
    os << "]";
  }
  os << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int run_mvpolytope(const CartanData& cd, const Word& word, const std::vector<long>& data) {
  need_simply_laced(cd);
  BinfElement b = binf_from_datum(cd, LusztigDatum{word, data});
  MVPolytope mv = mv_polytope(cd, b);
  std::vector<Word> words = reduced_words_w0(cd);
  if (words.size() > 64) words = {reference_word(cd), word};
  std::ostringstream os;
  os << "{\"schema\":\"mvpolytope/1\",\"cartan\":\"" << cd.name
     << "\",\"nu\":" << fmt_longs(mv.nu) << ",\"vertices\":[";
  const auto& vs = mv.poly.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << fmt_longs(vs[i]);
  os << "],\"data\":[";
  for (std::size_t i = 0; i < words.size(); ++i) {
    LusztigDatum d = binf_datum(cd, b, words[i]);
    os << (i ? "," : "") << "{\"word\":" << fmt_word(d.word)
       << ",\"datum\":" << fmt_longs(d.data) << "}";
  }
  os << "]}";
  std::cout << os.str() << "\n";
  return 0;
}

int run_cn_verify(const std::string& group, int maxdeg) {
  if (maxdeg < 0) throw std::invalid_argument("--maxdeg must be nonnegative");
  if (group != "sl2" && group != "sl3")
    throw std::invalid_argument("unknown group '" + group + "', expected sl2 or sl3");
  BasisFamily fam = group == "sl2" ? sl2_family(maxdeg) : sl3_family(maxdeg);
  BiperfectReport rep = verify_biperfect(fam, maxdeg);
  std::ostringstream os;
  os << "{\"schema\":\"cnverify/1\",\"group\":\"" << group << "\",\"height\":" << maxdeg
     << ",\"elements\":" << fam.elems.size()
     << ",\"pass\":" << (rep.pass ? "true" : "false") << ",\"failures\":[";
  for (std::size_t i = 0; i < rep.failures.size(); ++i) {
    const PerfectFailure& f = rep.failures[i];
    os << (i ? "," : "") << "{\"elem\":" << f.elem << ",\"side\":\"" << f.side
       << "\",\"i\":" << f.i << ",\"nu\":" << fmt_longs(f.nu) << ",\"reason\":\""
       << json_escape(f.reason) << "\"}";
  }
  os << "]}";
  std::cout << os.str() << "\n";
  return rep.pass ? 0 : 1;
}

int run_cn_unique(const std::string& group, int maxheight) {
  if (group != "sl3")
    throw std::invalid_argument("the uniqueness search is implemented for sl3 only");
  if (maxheight < 1 || maxheight > 4)
    throw std::invalid_argument("--maxheight must lie in 1..4");
  UniquenessResult res = uniqueness_search(maxheight);
  std::ostringstream os;
  os << "{\"schema\":\"cnunique/1\",\"group\":\"sl3\",\"maxheight\":" << maxheight
     << ",\"family_count\":" << res.family_count << ",\"pieces\":[";
  for (std::size_t i = 0; i < res.pieces.size(); ++i)
    os << (i ? "," : "") << "{\"nu\":" << fmt_longs(res.pieces[i].nu)
       << ",\"families\":" << res.pieces[i].families << "}";
  os << "]}";
  std::cout << os.str() << "\n";
  return res.family_count == 1 ? 0 : 1;
}

int run_measure(const std::string& op, const std::string& group, const std::string& key) {
  CoordRing ring = ring_for_group(group);
  MultiPoly f = element_from_key(ring, key);
  std::vector<std::string> tnames = default_var_names(ring.cartan().rank, "t");
  std::ostringstream os;
  os << "{\"schema\":\"measure/1\",\"op\":\"" << op << "\",\"group\":\"" << group
     << "\",\"element\":\"" << json_escape(key) << "\",";
  int rc = 0;
  if (op == "dbar") {
    os << "\"value\":\"" << json_escape(d_bar(ring, f).to_string(tnames)) << "\"";
  } else if (op == "ft") {
    os << "\"value\":\"" << json_escape(ft_d(ring, f).to_string(tnames)) << "\"";
  } else {
    NxMatrix nx = solve_nx(ring);
    bool ok = d_bar(ring, f) == evaluate_at_nx(ring, nx, f) &&
              ft_d(ring, f) == evaluate_at_twist(ring, nx, f);
    os << "\"pass\":" << (ok ? "true" : "false");
    rc = ok ? 0 : 1;
  }
  os << "}";
  std::cout << os.str() << "\n";
  return rc;
}

int run_ppa(const std::string& op, const std::string& path, const Word& seq) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open module file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  PPModule m = ppmodule_from_json(buf.str());
  if (!check_relation(m)) {
    std::cerr << "module does not satisfy the preprojective relation\n";
    return 1;
  }
  std::ostringstream os;
  os << "{\"schema\":\"ppa/1\",\"op\":\"" << op << "\",";
  if (op == "xi") {
    if (m.quiver.cd.rank > 2)
      throw std::invalid_argument("xi printing is implemented for rank 1 and 2");
    CoordRing ring = CoordRing::make(m.quiver.cd.rank + 1);
    os << "\"value\":\"" << json_escape(bibasis::xi(ring, m).to_string(ring.names()))
       << "\"";
  } else if (op == "hn") {
    os << "\"polytope\":" << hn_polytope(m).to_json();
  } else {
    if (seq.empty()) throw std::invalid_argument("chi needs --seq");
    os << "\"seq\":" << fmt_word(seq) << ",\"value\":" << chi_flag(m, seq);
  }
  os << "}";
  std::cout << os.str() << "\n";
  return 0;
}

int run_oracle_character(const CartanData& cd, const Weight& lambda) {
  auto ch = character(cd, lambda);
  std::ostringstream os;
  os << "{\"schema\":\"character/1\",\"cartan\":\"" << cd.name
     << "\",\"lambda\":" << fmt_longs(lambda) << ",\"dim\":" << character_dim(cd, lambda)
     << ",\"weights\":[";
  bool first = true;
  for (const auto& [w, m] : ch) {
    os << (first ? "" : ",") << "{\"wt\":" << fmt_longs(w) << ",\"mult\":" << m << "}";
    first = false;
  }
  os << "]}";
  std::cout << os.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crystals, biperfect bases and their measures"};
  app.require_subcommand(1);

  std::string config_path = "bibasis.conf";
  app.add_option("--config", config_path, "key = value file with default type/rank");

  std::string type;
  int rank = 0;
  long depth = 4;
  std::string format = "json";
  std::vector<long> lambda, mu, nu, data;
  Word word, seq;
  std::string group = "sl3", element, module_path;

  auto add_type_rank = [&](CLI::App* sub) {
    sub->add_option("--type", type, "Cartan letter (A, D, E, ...)");
    sub->add_option("--rank", rank, "rank");
  };

  CLI::App* binf = app.add_subcommand("binf", "enumerate the infinity crystal");
  add_type_rank(binf);
  binf->add_option("--depth", depth, "truncation height")->required();
  binf->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

  CLI::App* blam = app.add_subcommand("blambda", "highest weight crystal");
  add_type_rank(blam);
  blam->add_option("--lambda", lambda)->delimiter(',')->required();

  CLI::App* mult = app.add_subcommand("mult", "multiplicities");
  mult->require_subcommand(1);
  CLI::App* mw = mult->add_subcommand("weight", "weight multiplicity in V(lambda)");
  add_type_rank(mw);
  mw->add_option("--lambda", lambda)->delimiter(',')->required();
  mw->add_option("--mu", mu)->delimiter(',')->required();
  CLI::App* mt = mult->add_subcommand("tensor", "tensor product multiplicities");
  add_type_rank(mt);
  mt->add_option("--lambda", lambda)->delimiter(',')->required();
  mt->add_option("--mu", mu)->delimiter(',')->required();
  CLI::Option* nu_opt = mt->add_option("--nu", nu)->delimiter(',');

  CLI::App* mvp = app.add_subcommand("mvpolytope", "polytope of a Lusztig datum");
  add_type_rank(mvp);
  mvp->add_option("--word", word)->delimiter(',')->required();
  mvp->add_option("--data", data)->delimiter(',')->required();

  CLI::App* cn = app.add_subcommand("cn", "biperfect bases of the coordinate ring");
  cn->require_subcommand(1);
  int maxdeg = 6, maxheight = 4;
  CLI::App* cnv = cn->add_subcommand("verify", "check the closed-form family");
  cnv->add_option("--group", group)->check(CLI::IsMember({"sl2", "sl3"}));
  cnv->add_option("--maxdeg", maxdeg, "largest weight height checked");
  CLI::App* cnu = cn->add_subcommand("unique", "search for all biperfect families");
  cnu->add_option("--group", group);
  cnu->add_option("--maxheight", maxheight);

  CLI::App* mea = app.add_subcommand("measure", "word-sum transforms of basis elements");
  mea->require_subcommand(1);
  for (const char* op : {"dbar", "ft", "check"}) {
    CLI::App* sub = mea->add_subcommand(op);
    sub->add_option("--group", group)->check(CLI::IsMember({"sl2", "sl3"}));
    sub->add_option("--element", element)->required();
  }

  CLI::App* ppa = app.add_subcommand("ppa", "preprojective algebra modules");
  ppa->require_subcommand(1);
  for (const char* op : {"xi", "hn", "chi"}) {
    CLI::App* sub = ppa->add_subcommand(op);
    sub->add_option("--module", module_path, "module JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    if (std::string(op) == "chi") sub->add_option("--seq", seq)->delimiter(',');
  }

  CLI::App* orc = app.add_subcommand("oracle", "reference computations");
  CLI::App* och = orc->add_subcommand("character", "formal character of V(lambda)");
  orc->require_subcommand(1);
  add_type_rank(och);
  och->add_option("--lambda", lambda)->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ConfigDefaults defaults = read_config(config_path);
  if (type.empty()) type = defaults.type;
  if (rank == 0) rank = defaults.rank;

  try {
    if (binf->parsed()) return run_binf(cartan_for(type, rank), depth, format);
    if (blam->parsed()) {
      CartanData cd = cartan_for(type, rank);
      return run_blambda(cd, parse_dominant(cd, lambda, "--lambda"));
    }
    if (mw->parsed()) {
      CartanData cd = cartan_for(type, rank);
      Weight l = parse_dominant(cd, lambda, "--lambda");
      if ((int)mu.size() != cd.rank)
        throw std::invalid_argument("--mu needs " + std::to_string(cd.rank) +
                                    " coordinates");
      return run_mult_weight(cd, l, mu);
    }
    if (mt->parsed()) {
      CartanData cd = cartan_for(type, rank);
      Weight l = parse_dominant(cd, lambda, "--lambda");
      Weight m = parse_dominant(cd, mu, "--mu");
      std::optional<Weight> n;
      if (nu_opt->count()) n = parse_dominant(cd, nu, "--nu");
      return run_mult_tensor(cd, l, m, n);
    }
    if (mvp->parsed()) return run_mvpolytope(cartan_for(type, rank), word, data);
    if (cnv->parsed()) return run_cn_verify(group, maxdeg);
    if (cnu->parsed()) return run_cn_unique(group, maxheight);
    for (const char* op : {"dbar", "ft", "check"})
      if (mea->get_subcommand(op)->parsed()) return run_measure(op, group, element);
    for (const char* op : {"xi", "hn", "chi"})
      if (ppa->get_subcommand(op)->parsed()) return run_ppa(op, module_path, seq);
    if (och->parsed()) {
      CartanData cd = cartan_for(type, rank);
      return run_oracle_character(cd, parse_dominant(cd, lambda, "--lambda"));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
