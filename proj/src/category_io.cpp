#include "workbench/ainf.hpp"

#include <algorithm>
#include <cctype>

namespace wb {

namespace {

struct Word {
    std::string text;
    int column;
};

struct Line {
    int number;
    std::vector<Word> words;

    [[noreturn]] void fail(const std::string& msg, size_t word = 0) const {
        int col = words.empty() ? 1 : words[std::min(word, words.size() - 1)].column;
        throw ParseError(msg, number, col);
    }
};

std::vector<Line> lines_of(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        Line line{number, {}};
        for (size_t i = 0; i < raw.size();) {
            if (raw[i] == '#') break;
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            Word w{"", static_cast<int>(i) + 1};
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) w.text += raw[i++];
            line.words.push_back(w);
        }
        if (!line.words.empty()) out.push_back(line);
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    size_t start = 0;
    while (true) {
        size_t at = s.find(sep, start);
        out.push_back(s.substr(start, at == std::string::npos ? std::string::npos : at - start));
        if (at == std::string::npos) break;
        start = at + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

// key=value words starting at index `from`
std::map<std::string, std::pair<std::string, size_t>> keyed(const Line& line, size_t from,
                                                            std::initializer_list<const char*> allowed) {
    std::map<std::string, std::pair<std::string, size_t>> kv;
    for (size_t i = from; i < line.words.size(); ++i) {
        const auto& w = line.words[i].text;
        auto eq = w.find('=');
        if (eq == std::string::npos) line.fail("expected key=value, got '" + w + "'", i);
        std::string key = w.substr(0, eq);
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
            line.fail("unknown key '" + key + "'", i);
        if (!kv.emplace(key, std::make_pair(w.substr(eq + 1), i)).second) line.fail("repeated key '" + key + "'", i);
    }
    return kv;
}

template <class F>
auto located(const Line& line, size_t word, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        line.fail(e.what(), word);
    } catch (const TypeError& e) {
        line.fail(e.what(), word);
    }
}

int parse_count(const Line& line, size_t i) {
    const auto& w = line.words.at(i).text;
    if (w.empty() || !std::all_of(w.begin(), w.end(), ::isdigit)) line.fail("expected a non-negative integer, got '" + w + "'", i);
    return std::stoi(w);
}

NovikovElement coeff_of(const Line& line, const std::map<std::string, std::pair<std::string, size_t>>& kv) {
    auto it = kv.find("coeff");
    if (it == kv.end()) return NovikovElement::one();
    return located(line, it->second.second, [&] { return parse_novikov(it->second.first); });
}

const std::pair<std::string, size_t>& required(const Line& line,
                                               const std::map<std::string, std::pair<std::string, size_t>>& kv,
                                               const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) line.fail("missing " + key + "=");
    return it->second;
}

std::vector<std::pair<std::vector<std::string>, std::pair<std::string, NovikovElement>>> canonical_terms(const Table& t) {
    std::vector<std::pair<std::vector<std::string>, std::pair<std::string, NovikovElement>>> rows;
    for (const auto& [in, e] : t)
        for (const auto& [g, c] : e) rows.push_back({in, {g, c}});
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        if (a.first != b.first) return a.first < b.first;
        return a.second.first < b.second.first;
    });
    return rows;
}

}  // namespace

FilteredAInfCategory parse_category(std::string_view text) {
    FilteredAInfCategory cat;
    std::map<std::pair<std::vector<std::string>, std::string>, int> seen_terms;
    for (const auto& line : lines_of(text)) {
        const std::string& head = line.words[0].text;
        if (head == "object") {
            if (line.words.size() != 2) line.fail("expected 'object <name>'");
            located(line, 1, [&] { cat.add_object(line.words[1].text); });
        } else if (head == "gen") {
            if (line.words.size() < 4) line.fail("expected 'gen X Y name level=p/q ham=p/q'");
            auto kv = keyed(line, 4, {"level", "ham"});
            Generator g{line.words[3].text, line.words[1].text, line.words[2].text, 0, 0};
            if (kv.count("level")) g.level = located(line, kv["level"].second, [&] { return parse_rational(kv["level"].first); });
            if (kv.count("ham")) g.ham = located(line, kv["ham"].second, [&] { return parse_rational(kv["ham"].first); });
            located(line, 3, [&] { cat.add_generator(g); });
        } else if (head == "mu") {
            if (line.words.size() < 2) line.fail("expected 'mu d X0 .. Xd in=.. out=.. coeff=..'");
            int d = parse_count(line, 1);
            if (d < 1) line.fail("mu needs d >= 1", 1);
            if (line.words.size() < static_cast<size_t>(d) + 3) line.fail("mu " + std::to_string(d) + " needs " + std::to_string(d + 1) + " objects");
            std::vector<std::string> objs;
            for (int i = 0; i <= d; ++i) objs.push_back(line.words[2 + i].text);
            auto kv = keyed(line, static_cast<size_t>(d) + 3, {"in", "out", "coeff"});
            const auto& in = required(line, kv, "in");
            const auto& out = required(line, kv, "out");
            auto inputs = split(in.first, ',');
            if (static_cast<int>(inputs.size()) != d) line.fail("in= lists " + std::to_string(inputs.size()) + " generators, expected " + std::to_string(d), in.second);
            auto path = located(line, in.second, [&] { return cat.object_path(inputs); });
            if (path != objs) line.fail("objects " + join(objs, " ") + " do not match the inputs' path " + join(path, " "), 2);
            NovikovElement c = coeff_of(line, kv);
            if (!seen_terms.emplace(std::make_pair(inputs, out.first), line.number).second)
                line.fail("duplicate mu term for the same inputs and output", out.second);
            located(line, out.second, [&] { cat.add_mu_term(inputs, out.first, c); });
        } else if (head == "unit") {
            if (line.words.size() < 3) line.fail("expected 'unit X g coeff=..'");
            auto kv = keyed(line, 3, {"coeff"});
            Element e = cat.units().count(line.words[1].text) ? cat.units().at(line.words[1].text) : Element{};
            located(line, 2, [&] { cat.generator(line.words[2].text); });
            add_term(e, line.words[2].text, coeff_of(line, kv));
            located(line, 1, [&] { cat.set_unit(line.words[1].text, e); });
        } else {
            line.fail("unknown directive '" + head + "'");
        }
    }
    return cat;
}

std::string serialize(const FilteredAInfCategory& cat) {
    std::string out;
    for (const auto& x : cat.objects()) out += "object " + x + "\n";
    for (const auto& g : cat.generators())
        out += "gen " + g.source + " " + g.target + " " + g.name + " level=" + to_string(g.level) + " ham=" + to_string(g.ham) + "\n";
    for (const auto& [in, term] : canonical_terms(cat.mu())) {
        out += "mu " + std::to_string(in.size()) + " " + join(cat.object_path(in), " ") + " in=" + join(in, ",") +
               " out=" + term.first + " coeff=" + to_string(term.second) + "\n";
    }
    for (const auto& x : cat.objects()) {
        auto it = cat.units().find(x);
        if (it == cat.units().end()) continue;
        for (const auto& [g, c] : it->second) out += "unit " + x + " " + g + " coeff=" + to_string(c) + "\n";
    }
    return out;
}

AInfFunctor parse_functor(std::string_view text, const FilteredAInfCategory& A, const FilteredAInfCategory& B) {
    AInfFunctor f;
    std::map<std::pair<std::vector<std::string>, std::string>, int> seen_terms;
    for (const auto& line : lines_of(text)) {
        const std::string& head = line.words[0].text;
        if (head == "map") {
            if (line.words.size() != 4 || line.words[2].text != "->") line.fail("expected 'map X -> Y'");
            if (!A.has_object(line.words[1].text)) line.fail("unknown source object '" + line.words[1].text + "'", 1);
            if (!B.has_object(line.words[3].text)) line.fail("unknown target object '" + line.words[3].text + "'", 3);
            if (!f.object_map.emplace(line.words[1].text, line.words[3].text).second) line.fail("object mapped twice", 1);
        } else if (head == "F") {
            if (line.words.size() < 2) line.fail("expected 'F d X0 .. Xd in=.. out=.. coeff=..'");
            int d = parse_count(line, 1);
            if (d < 1) line.fail("F needs d >= 1", 1);
            if (line.words.size() < static_cast<size_t>(d) + 3) line.fail("F " + std::to_string(d) + " needs " + std::to_string(d + 1) + " objects");
            std::vector<std::string> objs;
            for (int i = 0; i <= d; ++i) objs.push_back(line.words[2 + i].text);
            auto kv = keyed(line, static_cast<size_t>(d) + 3, {"in", "out", "coeff"});
            const auto& in = required(line, kv, "in");
            const auto& out = required(line, kv, "out");
            auto inputs = split(in.first, ',');
            if (static_cast<int>(inputs.size()) != d) line.fail("in= lists " + std::to_string(inputs.size()) + " generators, expected " + std::to_string(d), in.second);
            auto path = located(line, in.second, [&] { return A.object_path(inputs); });
            if (path != objs) line.fail("objects " + join(objs, " ") + " do not match the inputs' path " + join(path, " "), 2);
            NovikovElement c = coeff_of(line, kv);
            if (!seen_terms.emplace(std::make_pair(inputs, out.first), line.number).second)
                line.fail("duplicate F term for the same inputs and output", out.second);
            located(line, out.second, [&] { add_functor_term(f, A, B, inputs, out.first, c); });
        } else {
            line.fail("unknown directive '" + head + "'");
        }
    }
    return f;
}

std::string serialize(const AInfFunctor& f, const FilteredAInfCategory& A) {
    std::string out;
    for (const auto& x : A.objects()) {
        auto it = f.object_map.find(x);
        if (it != f.object_map.end()) out += "map " + x + " -> " + it->second + "\n";
    }
    for (const auto& [in, term] : canonical_terms(f.F))
        out += "F " + std::to_string(in.size()) + " " + join(A.object_path(in), " ") + " in=" + join(in, ",") +
               " out=" + term.first + " coeff=" + to_string(term.second) + "\n";
    return out;
}

OCHAStructure parse_ocha(std::string_view text) {
    OCHAStructure s;
    for (const auto& line : lines_of(text)) {
        const std::string& head = line.words[0].text;
        if (head == "closed" || head == "open") {
            if (line.words.size() != 2) line.fail("expected '" + head + " <name>'");
            const auto& g = line.words[1].text;
            if (s.is_closed(g) || s.is_open(g)) line.fail("duplicate generator '" + g + "'", 1);
            (head == "closed" ? s.closed : s.open).push_back(g);
        } else if (head == "l") {
            if (line.words.size() < 2) line.fail("expected 'l n in=.. out=.. coeff=..'");
            int n = parse_count(line, 1);
            auto kv = keyed(line, 2, {"in", "out", "coeff"});
            const auto& in = required(line, kv, "in");
            const auto& out = required(line, kv, "out");
            auto inputs = split(in.first, ',');
            if (static_cast<int>(inputs.size()) != n) line.fail("in= lists " + std::to_string(inputs.size()) + " generators, expected " + std::to_string(n), in.second);
            NovikovElement c = coeff_of(line, kv);
            located(line, in.second, [&] { s.add_l_term(inputs, out.first, c); });
        } else if (head == "mu") {
            if (line.words.size() < 3) line.fail("expected 'mu k d in=c..;o.. out=.. coeff=..'");
            int k = parse_count(line, 1), d = parse_count(line, 2);
            auto kv = keyed(line, 3, {"in", "out", "coeff"});
            const auto& in = required(line, kv, "in");
            const auto& out = required(line, kv, "out");
            auto semi = in.first.find(';');
            if (semi == std::string::npos) line.fail("in= must separate closed and open inputs with ';'", in.second);
            auto ci = split(in.first.substr(0, semi), ',');
            auto oi = split(in.first.substr(semi + 1), ',');
            if (static_cast<int>(ci.size()) != k || static_cast<int>(oi.size()) != d)
                line.fail("in= does not match the declared arities", in.second);
            NovikovElement c = coeff_of(line, kv);
            located(line, in.second, [&] { s.add_mu_term(ci, oi, out.first, c); });
        } else {
            line.fail("unknown directive '" + head + "'");
        }
    }
    return s;
}

}  // namespace wb
