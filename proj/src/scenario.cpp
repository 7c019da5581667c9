#include "bvwb/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace bvwb {

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
      line(l), column(c), message(msg) {}

Scalar evaluate(const LinExpr& e, const std::map<std::string, Scalar>& values) {
    Scalar out;
    for (auto& [p, c] : e) {
        if (p.empty()) {
            out += c;
            continue;
        }
        auto it = values.find(p);
        if (it == values.end()) throw ScenarioError("no value for parameter '" + p + "'");
        out += c * it->second;
    }
    return out;
}

namespace {

bool negative(const Scalar& c) { return c.is_real() && sgn(c.re()) < 0; }

// One signed term "c p w"; returns text without the joining sign and whether it is negative.
std::pair<std::string, bool> term_text(const Scalar& c, const std::string& param, const std::string& word) {
    std::vector<std::string> parts;
    bool neg = negative(c);
    Scalar mag = neg ? -c : c;
    if (!mag.is_real())
        parts.push_back("(" + mag.str() + ")");
    else if (!mag.is_one() || (param.empty() && word.empty()))
        parts.push_back(mag.str());
    if (!param.empty()) parts.push_back(param);
    if (!word.empty()) parts.push_back(word);
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return {s, neg};
}

std::string join_terms(const std::vector<std::pair<std::string, bool>>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            s += terms[i].second ? "-" : "";
        else
            s += terms[i].second ? " - " : " + ";
        s += terms[i].first;
    }
    return s;
}

std::string caret_word(Mask m, const std::vector<std::string>& labels) {
    std::string s;
    for (int i = 0; i < int(labels.size()); ++i)
        if (m >> i & 1u) s += (s.empty() ? "" : "^") + labels[i];
    return s;
}

std::string format_symform(const SymForm& f, const std::vector<std::string>& labels) {
    std::vector<std::pair<std::string, bool>> terms;
    for (auto& [m, e] : f.terms)
        for (auto& [p, c] : e) terms.push_back(term_text(c, p, caret_word(m, labels)));
    return join_terms(terms);
}

}  // namespace

std::string format_linexpr(const LinExpr& e) {
    std::vector<std::pair<std::string, bool>> terms;
    for (auto& [p, c] : e)
        if (!c.is_zero()) terms.push_back(term_text(c, p, ""));
    return join_terms(terms);
}

void SymForm::add(Mask m, const std::string& param, const Scalar& c) {
    auto& e = terms[m];
    e[param] += c;
    if (e[param].is_zero()) e.erase(param);
    if (e.empty()) terms.erase(m);
}

Form SymForm::evaluate(const std::map<std::string, Scalar>& values) const {
    Form f(n);
    for (auto& [m, e] : terms) f.add(m, bvwb::evaluate(e, values));
    return f;
}

std::optional<int> SymForm::degree() const {
    std::optional<int> d;
    for (auto& [m, e] : terms) {
        if (d && *d != popcount(m)) return std::nullopt;
        d = popcount(m);
    }
    return d;
}

bool SymForm::uses_parameters() const {
    for (auto& [m, e] : terms)
        for (auto& [p, c] : e)
            if (!p.empty()) return true;
    return false;
}

bool Scenario::operator==(const Scenario& o) const {
    return name == o.name && description == o.description && basis == o.basis && coframe == o.coframe &&
           brackets == o.brackets && metric_rows == o.metric_rows && metric_diagonal == o.metric_diagonal &&
           j_columns == o.j_columns && complex_coframe == o.complex_coframe && omega == o.omega && pi == o.pi &&
           polarization == o.polarization && parameters == o.parameters && references == o.references;
}

std::map<std::string, Scalar> Scenario::parameter_values(const std::map<std::string, Scalar>& overrides) const {
    std::map<std::string, Scalar> v;
    for (auto& [p, c] : parameters) v[p] = c;
    for (auto& [p, c] : overrides) {
        if (!v.count(p)) throw ScenarioError("unknown parameter '" + p + "'");
        v[p] = c;
    }
    return v;
}

namespace {

struct Word {
    std::string text;
    int col;  // 1-based
};

std::vector<Word> split_words(const std::string& s, int col0) {
    std::vector<Word> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back({s.substr(i, j - i), col0 + int(i)});
        i = j;
    }
    return out;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_identifier(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

// Splits a run of concatenated labels ("xyt"), longest match first with backtracking.
std::optional<std::vector<int>> split_labels(const std::string& s, const std::vector<std::string>& labels) {
    std::vector<int> order(labels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return labels[a].size() > labels[b].size(); });
    std::vector<int> acc;
    std::function<bool(size_t)> go = [&](size_t pos) {
        if (pos == s.size()) return true;
        for (int k : order) {
            auto& l = labels[k];
            if (!l.empty() && s.compare(pos, l.size(), l) == 0) {
                acc.push_back(k);
                if (go(pos + l.size())) return true;
                acc.pop_back();
            }
        }
        return false;
    };
    if (go(0)) return acc;
    return std::nullopt;
}

class ExprParser {
public:
    ExprParser(const std::string& s, int line, int col0, const std::vector<std::string>& labels,
               const std::set<std::string>& params)
        : s_(s), line_(line), col0_(col0), labels_(labels), params_(params) {}

    SymForm parse() {
        SymForm out;
        out.n = int(labels_.size());
        skip();
        if (pos_ >= s_.size()) fail(pos_, "empty expression");
        bool first = true;
        while (true) {
            skip();
            if (pos_ >= s_.size()) break;
            int sign = 1;
            bool had_sign = false;
            while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                if (s_[pos_] == '-') sign = -sign;
                had_sign = true;
                ++pos_;
                skip();
            }
            if (!first && !had_sign) fail(pos_, "expected '+' or '-' between terms");
            term(out, sign);
            first = false;
        }
        return out;
    }

private:
    const std::string& s_;
    int line_, col0_;
    const std::vector<std::string>& labels_;
    const std::set<std::string>& params_;
    size_t pos_ = 0;

    [[noreturn]] void fail(size_t at, const std::string& msg) const { throw ParseError(line_, col0_ + int(at), msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string ident() {
        size_t b = pos_;
        while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
        return s_.substr(b, pos_ - b);
    }

    // Resolves one ^-separated piece to label indices.
    std::vector<int> labels_of(const std::string& id, size_t at) const {
        for (size_t k = 0; k < labels_.size(); ++k)
            if (labels_[k] == id) return {int(k)};
        if (auto split = split_labels(id, labels_)) return *split;
        fail(at, "unknown symbol '" + id + "'");
    }

    void term(SymForm& out, int sign) {
        Scalar c(sign);
        std::string param;
        Mask mask = 0;
        int wsign = 1;
        bool zero = false, any = false;
        auto wedge_in = [&](const std::vector<int>& idx) {
            for (int k : idx) {
                Mask b = Mask(1) << k;
                if (mask & b) zero = true;
                if (!zero) {
                    wsign *= wedge_sign(mask, b);
                    mask |= b;
                }
            }
        };
        while (true) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] == '+' || s_[pos_] == '-') break;
            size_t at = pos_;
            char ch = s_[pos_];
            if (ch == '*') {
                if (!any) fail(at, "'*' without a left factor");
                ++pos_;
                skip();
                if (pos_ >= s_.size() || s_[pos_] == '+' || s_[pos_] == '-' || s_[pos_] == '*')
                    fail(pos_, "expected a factor after '*'");
                continue;
            }
            if (ch == '(') {
                size_t close = s_.find(')', pos_);
                if (close == std::string::npos) fail(at, "unclosed '('");
                std::string inner = s_.substr(pos_ + 1, close - pos_ - 1);
                inner.erase(std::remove_if(inner.begin(), inner.end(),
                                           [](char x) { return std::isspace(static_cast<unsigned char>(x)); }),
                            inner.end());
                try {
                    c *= Scalar::parse(inner);
                } catch (const std::invalid_argument&) {
                    fail(at + 1, "bad scalar '" + inner + "'");
                }
                pos_ = close + 1;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                size_t b = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (pos_ < s_.size() && s_[pos_] == '/') {
                    ++pos_;
                    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                        fail(pos_, "expected denominator");
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                }
                if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 >= s_.size() || !is_ident_char(s_[pos_ + 1])))
                    ++pos_;
                std::string lit = s_.substr(b, pos_ - b);
                try {
                    c *= Scalar::parse(lit);
                } catch (const std::invalid_argument&) {
                    fail(b, "bad number '" + lit + "'");
                }
                if (pos_ < s_.size() && is_ident_char(s_[pos_])) fail(pos_, "unexpected character after number");
            } else if (is_ident_start(ch)) {
                std::string id = ident();
                bool chain = pos_ < s_.size() && s_[pos_] == '^';
                if (!chain && params_.count(id)) {
                    if (!param.empty()) fail(at, "term is not linear in the parameters");
                    param = id;
                } else if (!chain && id == "i" &&
                           std::find(labels_.begin(), labels_.end(), "i") == labels_.end()) {
                    c *= Scalar::i();
                } else {
                    wedge_in(labels_of(id, at));
                    while (pos_ < s_.size() && s_[pos_] == '^') {
                        ++pos_;
                        size_t pat = pos_;
                        if (pos_ >= s_.size() || !is_ident_start(s_[pos_])) fail(pos_, "expected a label after '^'");
                        wedge_in(labels_of(ident(), pat));
                    }
                }
            } else {
                fail(at, std::string("unexpected character '") + ch + "'");
            }
            any = true;
        }
        if (!any) fail(pos_, "expected a term");
        if (zero) return;
        out.add(mask, param, c * Scalar(wsign));
    }
};

struct RawLine {
    int no;
    std::vector<Word> words;
    std::string text;
    int col0 = 1;
};

const std::vector<std::string> kSections = {"meta",       "algebra", "metric",    "complex_structure", "symplectic",
                                            "poisson",    "lagrangian", "parameters", "reference"};

struct Parser {
    std::map<std::string, std::vector<RawLine>> sections;
    std::map<std::string, int> section_line;
    Scenario sc;
    std::set<std::string> param_names;

    [[noreturn]] static void fail(const RawLine& l, int col, const std::string& msg) { throw ParseError(l.no, col, msg); }
    [[noreturn]] static void fail(const RawLine& l, const Word& w, const std::string& msg) {
        throw ParseError(l.no, w.col, msg);
    }

    // Substring of the raw line starting at word k; keeps the column of that word.
    static std::pair<std::string, int> tail(const RawLine& l, size_t k) {
        int col = l.words[k].col;
        return {l.text.substr(size_t(col - l.col0)), col};
    }

    static Scalar scalar(const RawLine& l, const Word& w) {
        try {
            return Scalar::parse(w.text);
        } catch (const std::invalid_argument&) {
            fail(l, w, "bad scalar '" + w.text + "'");
        }
    }

    void split(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        std::string current;
        while (std::getline(in, raw)) {
            ++no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            auto hash = raw.find('#');
            std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
            size_t b = 0;
            while (b < body.size() && std::isspace(static_cast<unsigned char>(body[b]))) ++b;
            size_t e = body.size();
            while (e > b && std::isspace(static_cast<unsigned char>(body[e - 1]))) --e;
            if (b == e) continue;
            std::string t = body.substr(b, e - b);
            int col0 = int(b) + 1;
            if (t.front() == '[') {
                if (t.back() != ']') throw ParseError(no, col0, "unterminated section header");
                std::string name = t.substr(1, t.size() - 2);
                if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
                    throw ParseError(no, col0 + 1, "unknown section '" + name + "'");
                if (section_line.count(name)) throw ParseError(no, col0, "duplicate section '" + name + "'");
                section_line[name] = no;
                sections[name];
                current = name;
                continue;
            }
            if (current.empty()) throw ParseError(no, col0, "content before the first section header");
            RawLine l;
            l.no = no;
            l.text = t;
            l.col0 = col0;
            l.words = split_words(t, col0);
            sections[current].push_back(l);
        }
        if (!section_line.count("algebra")) throw ParseError(no + 1, 1, "missing [algebra] section");
    }

    int basis_index(const RawLine& l, const Word& w) const {
        auto it = std::find(sc.basis.begin(), sc.basis.end(), w.text);
        if (it == sc.basis.end()) fail(l, w, "unknown basis vector '" + w.text + "'");
        return int(it - sc.basis.begin());
    }

    SymForm expr(const RawLine& l, size_t k, const std::vector<std::string>& labels, int degree,
                 const char* what) const {
        if (k >= l.words.size()) fail(l, int(l.col0 + l.text.size()), std::string("missing ") + what);
        auto [text, col] = tail(l, k);
        SymForm f = ExprParser(text, l.no, col, labels, param_names).parse();
        for (auto& [m, e] : f.terms)
            if (popcount(m) != degree)
                fail(l, col, std::string(what) + " must have degree " + std::to_string(degree));
        return f;
    }

    void need_words(const RawLine& l, size_t count, const char* usage) const {
        if (l.words.size() < count) fail(l, l.words[0].col, std::string("expected: ") + usage);
    }

    void meta() {
        std::set<std::string> seen;
        for (auto& l : sections["meta"]) {
            auto& key = l.words[0];
            if (key.text != "name" && key.text != "description") fail(l, key, "unknown key '" + key.text + "'");
            if (!seen.insert(key.text).second) fail(l, key, "duplicate key '" + key.text + "'");
            std::string v = l.words.size() > 1 ? tail(l, 1).first : "";
            (key.text == "name" ? sc.name : sc.description) = v;
        }
    }

    void algebra() {
        auto& lines = sections["algebra"];
        std::optional<int> dim;
        const RawLine* basis_line = nullptr;
        const RawLine* coframe_line = nullptr;
        for (auto& l : lines) {
            auto& key = l.words[0];
            if (key.text == "dim") {
                if (dim) fail(l, key, "duplicate key 'dim'");
                need_words(l, 2, "dim <N>");
                if (l.words.size() > 2) fail(l, l.words[2], "unexpected token");
                auto& w = l.words[1];
                if (!std::all_of(w.text.begin(), w.text.end(), [](char c) { return std::isdigit(c); }) ||
                    w.text.size() > 3)
                    fail(l, w, "dimension must be a positive integer");
                int n = std::stoi(w.text);
                if (n <= 0 || n > kMaxDim) fail(l, w, "dimension must be between 1 and " + std::to_string(kMaxDim));
                dim = n;
            } else if (key.text == "basis" || key.text == "coframe") {
                auto& slot = key.text == "basis" ? basis_line : coframe_line;
                if (slot) fail(l, key, "duplicate key '" + key.text + "'");
                need_words(l, 2, "basis <labels...>");
                slot = &l;
            } else if (key.text != "bracket") {
                fail(l, key, "unknown key '" + key.text + "'");
            }
        }
        auto read_labels = [&](const RawLine* l, std::vector<std::string>& out) {
            std::set<std::string> seen;
            for (size_t k = 1; k < l->words.size(); ++k) {
                auto& w = l->words[k];
                if (!valid_identifier(w.text)) fail(*l, w, "bad label '" + w.text + "'");
                if (!seen.insert(w.text).second) fail(*l, w, "duplicate label '" + w.text + "'");
                out.push_back(w.text);
            }
        };
        if (basis_line) read_labels(basis_line, sc.basis);
        if (coframe_line) read_labels(coframe_line, sc.coframe);
        int algebra_line = section_line["algebra"];
        if (!dim && sc.basis.empty()) throw ParseError(algebra_line, 1, "[algebra] needs 'dim' or 'basis'");
        int n = dim ? *dim : int(sc.basis.size());
        if (n > kMaxDim) throw ParseError(basis_line->no, basis_line->words[0].col, "too many basis vectors");
        if (sc.basis.empty()) sc.basis = default_labels(n, "X");
        if (int(sc.basis.size()) != n)
            fail(*basis_line, basis_line->words[0], "basis has " + std::to_string(sc.basis.size()) +
                                                        " labels but dim is " + std::to_string(n));
        if (sc.coframe.empty()) sc.coframe = LieAlgebraSpec(n, sc.basis).coframe_labels();
        if (coframe_line && int(sc.coframe.size()) != n)
            fail(*coframe_line, coframe_line->words[0], "coframe needs one label per basis vector");
        for (auto& cl : sc.coframe)
            if (std::find(sc.basis.begin(), sc.basis.end(), cl) != sc.basis.end() &&
                coframe_line)
                fail(*coframe_line, coframe_line->words[0], "coframe label '" + cl + "' clashes with a basis label");
    }

    void brackets() {
        for (auto& l : sections["algebra"]) {
            if (l.words[0].text != "bracket") continue;
            need_words(l, 4, "bracket <A> <B> -> <expression>");
            int i = basis_index(l, l.words[1]);
            int j = basis_index(l, l.words[2]);
            if (l.words[3].text != "->") fail(l, l.words[3], "expected '->'");
            if (i == j) fail(l, l.words[2], "bracket of a vector with itself");
            SymForm v = expr(l, 4, sc.basis, 1, "bracket value");
            if (i > j) {
                std::swap(i, j);
                SymForm neg = v;
                neg.terms.clear();
                for (auto& [m, e] : v.terms)
                    for (auto& [p, c] : e) neg.add(m, p, -c);
                v = neg;
            }
            for (auto& b : sc.brackets)
                if (b.first == std::make_pair(i, j)) fail(l, l.words[0], "bracket given twice for this pair");
            sc.brackets.push_back({{i, j}, v});
        }
        std::sort(sc.brackets.begin(), sc.brackets.end(),
                  [](auto& a, auto& b) { return a.first < b.first; });
    }

    void parameters() {
        for (auto& l : sections["parameters"]) {
            auto& key = l.words[0];
            if (!valid_identifier(key.text)) fail(l, key, "bad parameter name '" + key.text + "'");
            if (key.text == "i") fail(l, key, "'i' is reserved for the imaginary unit");
            auto clash = [&](const std::vector<std::string>& v) {
                return std::find(v.begin(), v.end(), key.text) != v.end();
            };
            if (clash(sc.basis) || clash(sc.coframe)) fail(l, key, "parameter '" + key.text + "' clashes with a label");
            if (param_names.count(key.text)) fail(l, key, "duplicate parameter '" + key.text + "'");
            need_words(l, 2, "<name> <default value>");
            if (l.words.size() > 2) fail(l, l.words[2], "unexpected token");
            param_names.insert(key.text);
            sc.parameters.push_back({key.text, scalar(l, l.words[1])});
        }
    }

    void metric() {
        if (!section_line.count("metric")) return;
        auto& lines = sections["metric"];
        int n = int(sc.basis.size());
        std::vector<std::vector<Scalar>> rows;
        bool diag = false, full = false;
        for (auto& l : lines) {
            auto& key = l.words[0];
            if (key.text != "diagonal" && key.text != "row") fail(l, key, "unknown key '" + key.text + "'");
            if (key.text == "diagonal") {
                if (diag || full) fail(l, key, "metric given twice");
                diag = true;
            } else {
                if (diag) fail(l, key, "metric given twice");
                full = true;
            }
            if (int(l.words.size()) != n + 1) fail(l, key, "expected " + std::to_string(n) + " entries");
            std::vector<Scalar> r;
            for (size_t k = 1; k < l.words.size(); ++k) r.push_back(scalar(l, l.words[k]));
            if (diag) {
                for (int a = 0; a < n; ++a) {
                    std::vector<Scalar> row(n);
                    row[a] = r[a];
                    rows.push_back(row);
                }
            } else {
                rows.push_back(r);
            }
        }
        if (full && int(rows.size()) != n)
            throw ParseError(section_line["metric"], 1, "metric needs " + std::to_string(n) + " rows");
        if (rows.empty()) throw ParseError(section_line["metric"], 1, "empty [metric] section");
        sc.metric_rows = rows;
        sc.metric_diagonal = diag;
    }

    void complex_structure() {
        if (!section_line.count("complex_structure")) return;
        int n = int(sc.basis.size());
        std::vector<std::optional<SymForm>> cols(n);
        for (auto& l : sections["complex_structure"]) {
            auto& key = l.words[0];
            if (key.text == "coframe") {
                if (!sc.complex_coframe.empty()) fail(l, key, "duplicate key 'coframe'");
                if (int(l.words.size()) != n + 1) fail(l, key, "complex coframe needs " + std::to_string(n) + " labels");
                std::set<std::string> seen;
                for (size_t k = 1; k < l.words.size(); ++k) {
                    auto& w = l.words[k];
                    if (!valid_identifier(w.text)) fail(l, w, "bad label '" + w.text + "'");
                    if (!seen.insert(w.text).second) fail(l, w, "duplicate label '" + w.text + "'");
                    sc.complex_coframe.push_back(w.text);
                }
            } else if (key.text == "J") {
                need_words(l, 4, "J <A> -> <expression>");
                int i = basis_index(l, l.words[1]);
                if (l.words[2].text != "->") fail(l, l.words[2], "expected '->'");
                if (cols[i]) fail(l, l.words[1], "J given twice for this vector");
                cols[i] = expr(l, 3, sc.basis, 1, "J image");
            } else {
                fail(l, key, "unknown key '" + key.text + "'");
            }
        }
        std::vector<SymForm> out;
        for (int i = 0; i < n; ++i) {
            if (!cols[i])
                throw ParseError(section_line["complex_structure"], 1, "J image of " + sc.basis[i] + " missing");
            out.push_back(*cols[i]);
        }
        sc.j_columns = out;
    }

    void single_expression(const std::string& section, const std::string& key_name,
                           const std::vector<std::string>& labels, std::optional<SymForm>& slot) {
        if (!section_line.count(section)) return;
        for (auto& l : sections[section]) {
            auto& key = l.words[0];
            if (key.text != key_name) fail(l, key, "unknown key '" + key.text + "'");
            if (slot) fail(l, key, "duplicate key '" + key_name + "'");
            slot = expr(l, 1, labels, 2, key_name.c_str());
        }
        if (!slot) throw ParseError(section_line[section], 1, "[" + section + "] needs '" + key_name + "'");
    }

    void lagrangian() {
        if (!section_line.count("lagrangian")) return;
        std::optional<std::vector<int>> lag, lagp;
        for (auto& l : sections["lagrangian"]) {
            auto& key = l.words[0];
            if (key.text != "lag" && key.text != "lag_prime") fail(l, key, "unknown key '" + key.text + "'");
            auto& slot = key.text == "lag" ? lag : lagp;
            if (slot) fail(l, key, "duplicate key '" + key.text + "'");
            need_words(l, 2, "lag <vectors...>");
            std::vector<int> idx;
            for (size_t k = 1; k < l.words.size(); ++k) idx.push_back(basis_index(l, l.words[k]));
            slot = idx;
        }
        if (!lag || !lagp) throw ParseError(section_line["lagrangian"], 1, "[lagrangian] needs 'lag' and 'lag_prime'");
        sc.polarization = std::make_pair(*lag, *lagp);
    }

    void references() {
        for (auto& l : sections["reference"]) {
            auto& fw = l.words[0];
            Flavor f;
            try {
                f = parse_flavor(fw.text);
            } catch (const std::invalid_argument&) {
                fail(l, fw, "unknown flavor '" + fw.text + "'");
            }
            need_words(l, 2, "<flavor> <h|phi1|m3> ... -> <expression>");
            auto& kind = l.words[1];
            size_t nargs;
            if (kind.text == "h" || kind.text == "phi1")
                nargs = 1;
            else if (kind.text == "m3")
                nargs = 3;
            else
                fail(l, kind, "unknown reference kind '" + kind.text + "'");
            need_words(l, 2 + nargs + 2, "<flavor> <kind> <args> -> <expression>");
            auto& arrow = l.words[2 + nargs];
            if (arrow.text != "->") fail(l, arrow, "expected '->'");
            const auto& labels = f == Flavor::HermitianDolbeault ? complex_labels() : sc.coframe;
            Reference r;
            r.flavor = fw.text;
            r.kind = kind.text;
            for (size_t k = 2; k < 2 + nargs; ++k) {
                auto& w = l.words[k];
                SymForm a = ExprParser(w.text, l.no, w.col, labels, {}).parse();
                if (a.terms.size() != 1 || !a.terms.begin()->second.count("") ||
                    !a.terms.begin()->second.at("").is_one())
                    fail(l, w, "expected a basis word");
                if (nargs == 3 && popcount(a.terms.begin()->first) != 1) fail(l, w, "expected a generator");
                r.args.push_back(w.text);
            }
            if (l.words.size() <= 3 + nargs) fail(l, arrow, "missing reference value");
            auto [text, col] = tail(l, 3 + nargs);
            ExprParser(text, l.no, col, labels, param_names).parse();  // syntax only; degrees vary
            r.value = text;
            sc.references.push_back(r);
        }
    }

    std::vector<std::string> complex_labels() const {
        if (!sc.complex_coframe.empty()) return sc.complex_coframe;
        int n = int(sc.basis.size());
        auto hol = default_labels(n / 2, "w");
        std::vector<std::string> out = hol;
        for (auto& h : hol) out.push_back(h + "bar");
        return out;
    }
};

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    Parser p;
    p.split(text);
    p.meta();
    p.algebra();
    p.parameters();
    p.brackets();
    p.metric();
    p.complex_structure();
    p.single_expression("symplectic", "omega", p.sc.coframe, p.sc.omega);
    p.single_expression("poisson", "pi", p.sc.basis, p.sc.pi);
    p.lagrangian();
    p.references();
    return p.sc;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream o;
    auto line_of = [](const std::vector<std::string>& v) {
        std::string r;
        for (auto& x : v) r += " " + x;
        return r;
    };
    if (!s.name.empty() || !s.description.empty()) {
        o << "[meta]\n";
        if (!s.name.empty()) o << "name " << s.name << "\n";
        if (!s.description.empty()) o << "description " << s.description << "\n";
        o << "\n";
    }
    o << "[algebra]\n";
    o << "dim " << s.basis.size() << "\n";
    o << "basis" << line_of(s.basis) << "\n";
    o << "coframe" << line_of(s.coframe) << "\n";
    for (auto& [ij, v] : s.brackets)
        o << "bracket " << s.basis[ij.first] << " " << s.basis[ij.second] << " -> " << format_symform(v, s.basis)
          << "\n";
    if (!s.parameters.empty()) {
        o << "\n[parameters]\n";
        for (auto& [p, c] : s.parameters) o << p << " " << c.str() << "\n";
    }
    if (s.metric_rows) {
        o << "\n[metric]\n";
        auto& rows = *s.metric_rows;
        if (s.metric_diagonal) {
            o << "diagonal";
            for (size_t a = 0; a < rows.size(); ++a) o << " " << rows[a][a].str();
            o << "\n";
        } else {
            for (auto& r : rows) {
                o << "row";
                for (auto& c : r) o << " " << c.str();
                o << "\n";
            }
        }
    }
    if (s.j_columns) {
        o << "\n[complex_structure]\n";
        for (size_t i = 0; i < s.j_columns->size(); ++i)
            o << "J " << s.basis[i] << " -> " << format_symform((*s.j_columns)[i], s.basis) << "\n";
        if (!s.complex_coframe.empty()) o << "coframe" << line_of(s.complex_coframe) << "\n";
    }
    if (s.omega) o << "\n[symplectic]\nomega " << format_symform(*s.omega, s.coframe) << "\n";
    if (s.pi) o << "\n[poisson]\npi " << format_symform(*s.pi, s.basis) << "\n";
    if (s.polarization) {
        auto names = [&](const std::vector<int>& v) {
            std::string r;
            for (int i : v) r += " " + s.basis[i];
            return r;
        };
        o << "\n[lagrangian]\nlag" << names(s.polarization->first) << "\nlag_prime" << names(s.polarization->second)
          << "\n";
    }
    if (!s.references.empty()) {
        o << "\n[reference]\n";
        for (auto& r : s.references) {
            o << r.flavor << " " << r.kind;
            for (auto& a : r.args) o << " " << a;
            o << " -> " << r.value << "\n";
        }
    }
    return o.str();
}

Form parse_form_expression(const std::string& text, const std::vector<std::string>& labels,
                           const std::map<std::string, Scalar>& params) {
    std::set<std::string> names;
    for (auto& [p, c] : params) names.insert(p);
    return ExprParser(text, 1, 1, labels, names).parse().evaluate(params);
}

Structures instantiate(const Scenario& s, const std::map<std::string, Scalar>& values) {
    int n = int(s.basis.size());
    LieAlgebraSpec alg(n, s.basis, s.coframe);
    for (auto& [ij, v] : s.brackets) {
        Form f = v.evaluate(values);
        Vec c(n);
        for (auto& [m, x] : f.terms()) c[__builtin_ctz(m)] = x;
        alg.set_bracket(ij.first, ij.second, c);
    }
    auto jr = validate_jacobi(alg);
    if (!jr.ok) throw ScenarioError("brackets fail the Jacobi identity:\n" + jr.str(alg));
    Structures st{alg, {}, {}, {}, {}, {}, s.complex_coframe};
    Operator d = ce_differential(alg);
    if (s.metric_rows) {
        MetricSpec g{Matrix::from_rows(*s.metric_rows)};
        try {
            g.validate();
        } catch (const InvalidMetric& e) {
            throw ScenarioError(std::string("metric rejected: ") + e.what());
        }
        st.metric = g;
    }
    if (s.j_columns) {
        Matrix j(n, n);
        for (int i = 0; i < n; ++i) {
            Form f = (*s.j_columns)[i].evaluate(values);
            for (auto& [m, x] : f.terms()) j(__builtin_ctz(m), i) = x;
        }
        ComplexStructureSpec js{j};
        try {
            js.validate();
        } catch (const InvalidStructure& e) {
            throw ScenarioError(std::string("complex structure rejected: ") + e.what());
        }
        st.j = js;
    }
    if (s.omega) {
        Form w = s.omega->evaluate(values);
        try {
            SymplecticForm check(w);
        } catch (const std::exception& e) {
            throw ScenarioError(std::string("symplectic form rejected: ") + e.what());
        }
        st.omega = w;
    }
    if (s.pi) {
        Form p = s.pi->evaluate(values);
        std::vector<std::tuple<int, int, Scalar>> terms;
        for (auto& [m, x] : p.terms()) {
            int a = __builtin_ctz(m);
            int b = 31 - __builtin_clz(m);
            terms.emplace_back(a, b, x);
        }
        PoissonBivector pb = PoissonBivector::from_upper(n, terms);
        if (!poisson_valid(pb, d)) throw ScenarioError("bivector rejected: [i_pi, d]^2 != 0 (not Poisson)");
        st.pi = pb;
    }
    if (s.polarization) {
        if (!st.omega) throw ScenarioError("[lagrangian] requires a [symplectic] form");
        LagrangianPolarization pol{s.polarization->first, s.polarization->second};
        try {
            pol.validate(n, *st.omega);
        } catch (const std::exception& e) {
            throw ScenarioError(std::string("polarization rejected: ") + e.what());
        }
        st.polarization = pol;
    }
    return st;
}

void validate_scenario(const Scenario& s) { (void)instantiate(s, s.parameter_values()); }

}  // namespace bvwb
