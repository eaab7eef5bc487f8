#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "folim/eval.hpp"
#include "folim/ef.hpp"
#include "folim/interp.hpp"
#include "folim/io.hpp"
#include "folim/parser.hpp"
#include "folim/seq.hpp"
#include "folim/treestat.hpp"

using namespace folim;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "folim/v1";

std::uint64_t envSeed() {
    const char* env = std::getenv("FOLIM_SEED");
    if (!env) return 0;
    return std::strtoull(env, nullptr, 10);
}

std::uint64_t fileDigest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

struct Output {
    std::string outPath;
    void emit(const std::string& text) const {
        if (outPath.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(outPath);
            if (!out) throw ParseError("cannot write '" + outPath + "'");
            out << text << "\n";
        }
    }
};

json reportBase(const std::string& command, const std::vector<std::string>& inputs) {
    json digests = json::object();
    for (const auto& path : inputs) digests[path] = fileDigest(path);
    return json{{"schema", kSchema}, {"command", command}, {"inputs", digests}};
}

Signature signatureByName(const std::string& name) {
    auto colon = name.find(':');
    std::string kind = name.substr(0, colon);
    int colors = colon == std::string::npos ? 0 : std::stoi(name.substr(colon + 1));
    if (kind == "graph") return Signature::graph(colors);
    if (kind == "tree") return Signature::tree(colors);
    if (kind == "forest") return Signature::forest(colors);
    throw ParseError("unknown signature '" + name + "' (use graph[:c], tree[:c], forest[:c])");
}

struct StructureArgs {
    std::string graphPath, colorsPath, structurePath, treePath;
    void attach(CLI::App* cmd, bool required = true) {
        auto* g = cmd->add_option("--graph", graphPath, "edge list file (first line 'n m')");
        cmd->add_option("--colors", colorsPath, "per-vertex color file for --graph");
        auto* s = cmd->add_option("--structure", structurePath, "structure JSON file");
        auto* t = cmd->add_option("--tree", treePath, "rooted tree JSON file");
        g->excludes(s)->excludes(t);
        s->excludes(t);
        if (required) cmd->require_option();
        (void)required;
    }
    Structure load() const {
        if (!graphPath.empty()) return readEdgeList(graphPath, colorsPath);
        if (!structurePath.empty()) return readStructureJson(structurePath);
        if (!treePath.empty()) return readTreeJson(treePath).toStructure();
        throw ParseError("one of --graph/--structure/--tree is required");
    }
    std::vector<std::string> paths() const {
        std::vector<std::string> out;
        for (const auto& p : {graphPath, colorsPath, structurePath, treePath})
            if (!p.empty()) out.push_back(p);
        return out;
    }
};

std::string rationalList(const std::vector<Rational>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += " ";
        out += xs[i].str();
    }
    return out;
}

std::vector<Rational> spectrumFromOption(const std::string& limitSpec,
                                         const std::vector<Structure>& seq) {
    if (limitSpec == "last") {
        if (seq.empty()) throw ParseError("--limit last needs at least one structure");
        return spectrum(seq.back());
    }
    std::ifstream in(limitSpec);
    if (!in) throw ParseError("cannot open '" + limitSpec + "'");
    json j = json::parse(std::string(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>()));
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(Rational::parse(v.get<std::string>()));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-order statistics of finite structures, structural-convergence "
                 "analysis, and bounded-height tree limits"};
    app.require_subcommand(1);

    bool jsonMode = false;
    bool timing = false;
    app.add_flag("--json", jsonMode, "machine-readable JSON output (schema folim/v1)");
    app.add_flag("--timing", timing, "include wall time in JSON reports");

    auto started = std::chrono::steady_clock::now();
    auto finishReport = [&](json& report) {
        if (timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            report["wallMs"] = ms;
        }
    };

    // ---- pair ----------------------------------------------------------
    auto* pairCmd = app.add_subcommand("pair", "Stone pairing <phi, A>");
    StructureArgs pairStruct;
    pairStruct.attach(pairCmd);
    std::string pairFormula;
    int pairArity = -1;
    long long pairSamples = 0;
    double pairDelta = 0.05;
    std::uint64_t pairSeed = envSeed();
    std::string pairOut;
    pairCmd->add_option("--formula", pairFormula, "formula text")->required();
    pairCmd->add_option("--arity", pairArity, "tuple arity p (default: rank of the formula)");
    pairCmd->add_option("--samples", pairSamples, "Monte-Carlo sample count (0 = exact)");
    pairCmd->add_option("--delta", pairDelta, "confidence parameter for the Hoeffding radius");
    pairCmd->add_option("--seed", pairSeed, "sampling seed (default env FOLIM_SEED)");
    pairCmd->add_option("--out", pairOut, "write the result to a file");

    // ---- traj ----------------------------------------------------------
    auto* trajCmd = app.add_subcommand("traj", "pairing trajectory over a sequence");
    std::vector<std::string> trajGraphs, trajFormulas;
    std::vector<int> trajArities;
    std::string trajOut;
    trajCmd->add_option("--graph", trajGraphs, "edge list files, in sequence order")
        ->required();
    trajCmd->add_option("--formula", trajFormulas, "formula text (repeatable)")->required();
    trajCmd->add_option("--arity", trajArities, "arity per formula (default: rank)");
    trajCmd->add_option("--out", trajOut, "write the CSV/JSON to a file");

    // ---- spectrum ------------------------------------------------------
    auto* spectrumCmd = app.add_subcommand("spectrum", "component mass spectrum");
    StructureArgs spectrumStruct;
    spectrumStruct.attach(spectrumCmd);
    std::string spectrumOut;
    spectrumCmd->add_option("--out", spectrumOut, "write to file");

    // ---- clip ----------------------------------------------------------
    auto* clipCmd = app.add_subcommand("clip", "maximal clip cutoffs of a sequence");
    std::vector<std::string> clipGraphs;
    std::string clipLimit = "last", clipOut;
    clipCmd->add_option("--graph", clipGraphs, "edge list files, in sequence order")
        ->required();
    clipCmd->add_option("--limit", clipLimit,
                        "limit spectrum: 'last' or a JSON file of rationals");
    clipCmd->add_option("--out", clipOut, "write to file");

    // ---- comb ----------------------------------------------------------
    auto* combCmd = app.add_subcommand("comb", "comb decomposition of a sequence");
    std::vector<std::string> combGraphs;
    std::string combLimit = "last", combOut;
    int combRank = 1;
    combCmd->add_option("--graph", combGraphs, "edge list files, in sequence order")
        ->required();
    combCmd->add_option("--limit", combLimit,
                        "limit spectrum: 'last' or a JSON file of rationals");
    combCmd->add_option("--rank", combRank, "matching rank r");
    combCmd->add_option("--out", combOut, "write to file");

    // ---- balls ---------------------------------------------------------
    auto* ballsCmd = app.add_subcommand("balls", "rooted r-ball type distribution");
    StructureArgs ballsStruct;
    ballsStruct.attach(ballsCmd);
    int ballsRadius = 1;
    std::string ballsOut;
    ballsCmd->add_option("--radius", ballsRadius, "ball radius r");
    ballsCmd->add_option("--out", ballsOut, "write to file");

    // ---- stat ----------------------------------------------------------
    auto* statCmd = app.add_subcommand("stat", "tree statistic at a given rank");
    std::string statTree, statOut;
    int statRank = 1;
    statCmd->add_option("--tree", statTree, "rooted tree JSON file")->required();
    statCmd->add_option("--rank", statRank, "rank r");
    statCmd->add_option("--out", statOut, "write statistic JSON to a file");

    // ---- build-tree ----------------------------------------------------
    auto* buildCmd = app.add_subcommand("build-tree", "realize a statistic as a tree");
    std::string buildStat, buildOut;
    long long buildN = 1;
    buildCmd->add_option("--stat", buildStat, "statistic JSON file")->required();
    buildCmd->add_option("-N,--size", buildN, "target size N")->required();
    buildCmd->add_option("--out", buildOut, "write tree JSON to a file");

    // ---- build-approx --------------------------------------------------
    auto* approxCmd = app.add_subcommand("build-approx",
                                         "heavy-skeleton recursive realization");
    std::string approxStat, approxOut;
    long long approxN = 1;
    int approxP = 1, approxR = 1;
    double approxEps = 0.1;
    approxCmd->add_option("--stat", approxStat, "statistic JSON file")->required();
    approxCmd->add_option("-N,--size", approxN, "target size N")->required();
    approxCmd->add_option("-p,--arity", approxP, "pairing arity driving the contract");
    approxCmd->add_option("--rank", approxR, "rank r");
    approxCmd->add_option("--epsilon", approxEps, "accuracy parameter");
    approxCmd->add_option("--out", approxOut, "write tree JSON to a file");

    // ---- fmtp ----------------------------------------------------------
    auto* fmtpCmd = app.add_subcommand("fmtp", "finitary mass transport check");
    std::string fmtpStat, fmtpOut;
    fmtpCmd->add_option("--stat", fmtpStat, "statistic JSON file")->required();
    fmtpCmd->add_option("--out", fmtpOut, "write to file");

    // ---- ef ------------------------------------------------------------
    auto* efCmd = app.add_subcommand("ef", "Ehrenfeucht-Fraisse game");
    std::string efA, efB, efTupleA, efTupleB;
    int efRounds = 1;
    bool efTrees = false;
    efCmd->add_option("--left", efA, "first edge list / tree JSON")->required();
    efCmd->add_option("--right", efB, "second edge list / tree JSON")->required();
    efCmd->add_flag("--trees", efTrees, "inputs are rooted tree JSON files");
    efCmd->add_option("--rounds", efRounds, "round count r");
    efCmd->add_option("--left-tuple", efTupleA, "comma-separated vertices");
    efCmd->add_option("--right-tuple", efTupleB, "comma-separated vertices");

    // ---- dist ----------------------------------------------------------
    auto* distCmd = app.add_subcommand("dist", "elementary ultrametric 2^-r");
    std::string distA, distB;
    int distRMax = 5;
    bool distTrees = false;
    distCmd->add_option("--left", distA, "first edge list / tree JSON")->required();
    distCmd->add_option("--right", distB, "second edge list / tree JSON")->required();
    distCmd->add_flag("--trees", distTrees, "inputs are rooted tree JSON files");
    distCmd->add_option("--rmax", distRMax, "maximum round count examined");

    // ---- td ------------------------------------------------------------
    auto* tdCmd = app.add_subcommand("td", "tree-depth with certificate forest");
    StructureArgs tdStruct;
    tdStruct.attach(tdCmd);
    std::string tdMode = "exact", tdOut;
    tdCmd->add_option("--mode", tdMode, "exact | bound");
    tdCmd->add_option("--out", tdOut, "write to file");

    // ---- td-decompose --------------------------------------------------
    auto* tddCmd = app.add_subcommand("td-decompose",
                                      "elimination tree with ancestor-adjacency colors");
    StructureArgs tddStruct;
    tddStruct.attach(tddCmd);
    int tddHeight = 3;
    std::string tddOut;
    tddCmd->add_option("--height", tddHeight, "height bound h")->required();
    tddCmd->add_option("--out", tddOut, "write tree JSON to a file");

    // ---- interp --------------------------------------------------------
    auto* interpCmd = app.add_subcommand("interp", "apply a basic interpretation scheme");
    std::string interpScheme, interpBuiltin, interpOut;
    int interpColors = 0;
    StructureArgs interpStruct;
    interpStruct.attach(interpCmd);
    interpCmd->add_option("--scheme", interpScheme, "scheme JSON file");
    interpCmd->add_option("--builtin", interpBuiltin,
                          "yToF | fToY | rToP | td:h (instead of --scheme)");
    interpCmd->add_option("--scheme-colors", interpColors,
                          "color count for the builtin tree schemes");
    interpCmd->add_option("--out", interpOut, "write structure JSON to a file");

    // ---- ext-prop ------------------------------------------------------
    auto* extCmd = app.add_subcommand("ext-prop", "k-extension property");
    StructureArgs extStruct;
    extStruct.attach(extCmd);
    int extK = 1;
    extCmd->add_option("-k", extK, "extension parameter k");

    // ---- parse ---------------------------------------------------------
    auto* parseCmd = app.add_subcommand("parse", "parse and normalize a formula");
    std::string parseText, parseSig = "graph";
    parseCmd->add_option("--formula", parseText, "formula text")->required();
    parseCmd->add_option("--signature", parseSig, "graph[:c] | tree[:c] | forest[:c]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pairCmd) {
            Structure a = pairStruct.load();
            Signature sig = a.signature();
            Formula f = parseFormula(pairFormula, sig);
            int p = pairArity >= 0 ? pairArity : f.rank();
            Output out{pairOut};
            if (pairSamples > 0) {
                auto est = stonePairingSampled(a, f, p, pairSamples, pairDelta, pairSeed);
                if (jsonMode) {
                    json rep = reportBase("pair", pairStruct.paths());
                    rep["estimate"] = est.pointEstimate;
                    rep["radius"] = est.confidenceRadius;
                    rep["samples"] = est.sampleCount;
                    rep["seed"] = est.seed;
                    finishReport(rep);
                    out.emit(rep.dump(2));
                } else {
                    std::ostringstream os;
                    os << "estimate " << est.pointEstimate << " radius "
                       << est.confidenceRadius;
                    out.emit(os.str());
                }
            } else {
                Rational v = stonePairing(a, f, p);
                if (jsonMode) {
                    json rep = reportBase("pair", pairStruct.paths());
                    rep["value"] = v.str();
                    rep["arity"] = p;
                    finishReport(rep);
                    out.emit(rep.dump(2));
                } else {
                    out.emit(v.str());
                }
            }
        } else if (*trajCmd) {
            std::vector<Structure> seq;
            for (const auto& path : trajGraphs) seq.push_back(readEdgeList(path));
            if (seq.empty()) throw ParseError("traj: no structures");
            std::vector<Formula> formulas;
            std::vector<int> arities;
            for (size_t i = 0; i < trajFormulas.size(); ++i) {
                formulas.push_back(parseFormula(trajFormulas[i], seq.front().signature()));
                arities.push_back(i < trajArities.size() ? trajArities[i]
                                                         : formulas.back().rank());
            }
            auto t = trajectory(seq, formulas, arities);
            Output out{trajOut};
            if (jsonMode) {
                json rep = reportBase("traj", trajGraphs);
                json rows = json::array();
                for (const auto& row : t.values) {
                    json r = json::array();
                    for (const auto& v : row) r.push_back(v.str());
                    rows.push_back(r);
                }
                rep["values"] = rows;
                finishReport(rep);
                out.emit(rep.dump(2));
            } else {
                std::ostringstream os;
                os << "structure";
                for (const auto& text : trajFormulas) os << ",\"" << text << "\"";
                for (size_t n = 0; n < t.values.size(); ++n) {
                    os << "\n" << trajGraphs[n];
                    for (const auto& v : t.values[n]) os << "," << v.str();
                }
                out.emit(os.str());
            }
        } else if (*spectrumCmd) {
            Structure a = spectrumStruct.load();
            auto sp = spectrum(a);
            Output out{spectrumOut};
            if (jsonMode) {
                json rep = reportBase("spectrum", spectrumStruct.paths());
                json masses = json::array();
                for (const auto& m : sp) masses.push_back(m.str());
                rep["masses"] = masses;
                finishReport(rep);
                out.emit(rep.dump(2));
            } else {
                out.emit(rationalList(sp));
            }
        } else if (*clipCmd) {
            std::vector<Structure> seq;
            for (const auto& path : clipGraphs) seq.push_back(readEdgeList(path));
            std::vector<std::vector<Rational>> spectra;
            for (const auto& a : seq) spectra.push_back(spectrum(a));
            auto limit = spectrumFromOption(clipLimit, seq);
            auto cuts = clip(spectra, limit);
            Output out{clipOut};
            if (jsonMode) {
                json rep = reportBase("clip", clipGraphs);
                rep["cutoffs"] = cuts;
                finishReport(rep);
                out.emit(rep.dump(2));
            } else {
                std::ostringstream os;
                for (size_t i = 0; i < cuts.size(); ++i) os << (i ? " " : "") << cuts[i];
                out.emit(os.str());
            }
        } else if (*combCmd) {
            std::vector<Structure> seq;
            for (const auto& path : combGraphs) seq.push_back(readEdgeList(path));
            auto limit = spectrumFromOption(combLimit, seq);
            auto comb = combDecompose(seq, combRank, limit);
            json rep = reportBase("comb", combGraphs);
            json columns = json::array();
            for (size_t c = 0; c < comb.columns.size(); ++c) {
                json col;
                col["mass"] = comb.columnMasses[c].str();
                json sizes = json::array();
                for (const auto& s : comb.columns[c]) sizes.push_back(s.size());
                col["sizes"] = sizes;
                columns.push_back(col);
            }
            rep["columns"] = columns;
            json residueSizes = json::array();
            for (const auto& r : comb.residues) residueSizes.push_back(r.size());
            rep["residueSizes"] = residueSizes;
            rep["clip"] = comb.clipFunction;
            finishReport(rep);
            Output{combOut}.emit(rep.dump(2));
        } else if (*ballsCmd) {
            Structure g = ballsStruct.load();
            auto stats = ballStatistics(g, ballsRadius);
            Output out{ballsOut};
            if (jsonMode) {
                json rep = reportBase("balls", ballsStruct.paths());
                json types = json::array();
                for (const auto& [type, freq] : stats) {
                    types.push_back({{"size", type.size},
                                     {"key", std::to_string(std::hash<std::string>{}(type.key))},
                                     {"frequency", freq.str()}});
                }
                rep["types"] = types;
                finishReport(rep);
                out.emit(rep.dump(2));
            } else {
                std::ostringstream os;
                for (const auto& [type, freq] : stats)
                    os << "size " << type.size << " freq " << freq.str() << "\n";
                out.emit(os.str().substr(0, os.str().size() - 1));
            }
        } else if (*statCmd) {
            RootedTree t = readTreeJson(statTree);
            TreeStatistic stat = statisticOfTree(t, statRank);
            Output{statOut}.emit(statisticToJson(stat));
        } else if (*buildCmd) {
            TreeStatistic stat = readStatisticJson(buildStat);
            auto res = buildTree(stat, buildN);
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
            if (jsonMode) {
                json rep = reportBase("build-tree", {buildStat});
                rep["tree"] = json::parse(treeToJson(res.tree));
                rep["size"] = res.tree.size();
                rep["constantC"] = res.constantC;
                finishReport(rep);
                Output{buildOut}.emit(rep.dump(2));
            } else {
                Output{buildOut}.emit(treeToJson(res.tree));
            }
        } else if (*approxCmd) {
            TreeStatistic stat = readStatisticJson(approxStat);
            auto res = buildApprox(stat, approxP, approxR, approxEps, approxN);
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
            if (jsonMode) {
                json rep = reportBase("build-approx", {approxStat});
                rep["tree"] = json::parse(treeToJson(res.tree));
                rep["size"] = res.tree.size();
                rep["constantC"] = res.constantC;
                finishReport(rep);
                Output{approxOut}.emit(rep.dump(2));
            } else {
                Output{approxOut}.emit(treeToJson(res.tree));
            }
        } else if (*fmtpCmd) {
            TreeStatistic stat = readStatisticJson(fmtpStat);
            auto violations = fmtpCheck(stat);
            Output out{fmtpOut};
            if (jsonMode) {
                json rep = reportBase("fmtp", {fmtpStat});
                json vs = json::array();
                for (const auto& v : violations)
                    vs.push_back({{"tuple", v.tupleIdx}, {"message", v.message}});
                rep["violations"] = vs;
                rep["consistent"] = violations.empty();
                finishReport(rep);
                out.emit(rep.dump(2));
            } else if (violations.empty()) {
                out.emit("consistent");
            } else {
                std::ostringstream os;
                for (const auto& v : violations)
                    os << "violation at tuple " << v.tupleIdx << ": " << v.message << "\n";
                out.emit(os.str().substr(0, os.str().size() - 1));
            }
        } else if (*efCmd) {
            auto loadSide = [&](const std::string& path) {
                return efTrees ? readTreeJson(path).toStructure() : readEdgeList(path);
            };
            Structure a = loadSide(efA), b = loadSide(efB);
            auto parseTuple = [](const std::string& text) {
                std::vector<int> out;
                std::stringstream ss(text);
                std::string item;
                while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
                return out;
            };
            std::vector<int> ta = efTupleA.empty() ? std::vector<int>{} : parseTuple(efTupleA);
            std::vector<int> tb = efTupleB.empty() ? std::vector<int>{} : parseTuple(efTupleB);
            bool dup = efEquivalent(a, ta, b, tb, efRounds);
            if (jsonMode) {
                json rep = reportBase("ef", {efA, efB});
                rep["rounds"] = efRounds;
                rep["equivalent"] = dup;
                finishReport(rep);
                std::cout << rep.dump(2) << "\n";
            } else {
                std::cout << (dup ? "duplicator" : "spoiler") << "\n";
            }
        } else if (*distCmd) {
            auto loadSide = [&](const std::string& path) {
                return distTrees ? readTreeJson(path).toStructure() : readEdgeList(path);
            };
            Structure a = loadSide(distA), b = loadSide(distB);
            auto d = dist0(a, b, distRMax);
            if (jsonMode) {
                json rep = reportBase("dist", {distA, distB});
                rep["determined"] = d.determined;
                rep["value"] = d.value.str();
                if (d.determined) rep["failedAt"] = d.failedAt;
                finishReport(rep);
                std::cout << rep.dump(2) << "\n";
            } else if (d.determined) {
                std::cout << d.value.str() << "\n";
            } else {
                std::cout << "0 (undetermined beyond 2^-" << distRMax << ")\n";
            }
        } else if (*tdCmd) {
            Structure g = tdStruct.load();
            TdMode mode = tdMode == "bound" ? TdMode::Bound : TdMode::Exact;
            if (tdMode != "bound" && tdMode != "exact")
                throw ParseError("td: --mode must be exact or bound");
            auto res = treeDepth(g, mode);
            Output out{tdOut};
            if (jsonMode) {
                json rep = reportBase("td", tdStruct.paths());
                rep["depth"] = res.depth;
                rep["certificate"] = res.certificate.parent;
                finishReport(rep);
                out.emit(rep.dump(2));
            } else {
                std::ostringstream os;
                os << res.depth << "\nforest";
                for (int p : res.certificate.parent) os << " " << p;
                out.emit(os.str());
            }
        } else if (*tddCmd) {
            Structure g = tddStruct.load();
            RootedTree t = tdDecompose(g, tddHeight);
            Output{tddOut}.emit(treeToJson(t));
        } else if (*interpCmd) {
            BasicScheme scheme;
            if (!interpScheme.empty()) {
                scheme = readSchemeJson(interpScheme);
            } else if (!interpBuiltin.empty()) {
                if (interpBuiltin == "yToF") scheme = builtinSchemes(interpColors).yToF;
                else if (interpBuiltin == "fToY") scheme = builtinSchemes(interpColors).fToY;
                else if (interpBuiltin == "rToP") scheme = builtinSchemes(interpColors).rToP;
                else if (interpBuiltin.rfind("td:", 0) == 0)
                    scheme = treeDepthScheme(std::stoi(interpBuiltin.substr(3)));
                else
                    throw ParseError("unknown builtin scheme '" + interpBuiltin + "'");
            } else {
                throw ParseError("interp: --scheme or --builtin is required");
            }
            Structure a = !interpStruct.treePath.empty() && interpBuiltin.rfind("td:", 0) == 0
                              ? readTreeJson(interpStruct.treePath)
                                    .toStructureBits(std::stoi(interpBuiltin.substr(3)) - 1)
                              : interpStruct.load();
            Structure b = applyScheme(scheme, a);
            Output{interpOut}.emit(structureToJson(b));
        } else if (*extCmd) {
            Structure g = extStruct.load();
            Formula u = extensionSentence(extK);
            bool holds = stonePairing(g, u, 0) == Rational(1);
            if (jsonMode) {
                json rep = reportBase("ext-prop", extStruct.paths());
                rep["k"] = extK;
                rep["satisfied"] = holds;
                finishReport(rep);
                std::cout << rep.dump(2) << "\n";
            } else {
                std::cout << (holds ? "true" : "false") << "\n";
            }
        } else if (*parseCmd) {
            Formula f = parseFormula(parseText, signatureByName(parseSig));
            if (jsonMode) {
                json rep = reportBase("parse", {});
                rep["normalized"] = f.str();
                rep["qrank"] = f.qrank();
                json fv = json::array();
                for (int v : f.freeVars()) fv.push_back(v);
                rep["freeVars"] = fv;
                const char* tag = "FO_p";
                switch (classifyFragment(f)) {
                case FragmentTag::HOM: tag = "HOM"; break;
                case FragmentTag::QF: tag = "QF"; break;
                case FragmentTag::Sentence: tag = "Sentence"; break;
                default: break;
                }
                rep["fragment"] = tag;
                finishReport(rep);
                std::cout << rep.dump(2) << "\n";
            } else {
                std::cout << f.str() << "\nqrank " << f.qrank() << "\n";
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
