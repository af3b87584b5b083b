#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stsb/text.hpp"

namespace stsb {
namespace {

// The classic 179-word English IR stopword list (as shipped with NLTK).
constexpr std::string_view kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that", "that'll",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
    "between", "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn",
    "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn",
    "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan",
    "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
    "wouldn", "wouldn't"};

const std::unordered_set<std::string_view>& stopword_set() {
  static const std::unordered_set<std::string_view> set(std::begin(kStopwords),
                                                        std::end(kStopwords));
  return set;
}

// Irregular inflections: be/have/do forms, common strong verbs, irregular
// plurals, and a few regular forms the suffix rules would mangle.
const std::unordered_map<std::string_view, std::string_view>& irregular_forms() {
  static const std::unordered_map<std::string_view, std::string_view> table = {
      {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"},
      {"been", "be"}, {"being", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
      {"does", "do"}, {"did", "do"}, {"doing", "do"}, {"done", "do"},
      {"went", "go"}, {"gone", "go"}, {"goes", "go"}, {"going", "go"},
      {"ran", "run"}, {"ate", "eat"}, {"eaten", "eat"}, {"saw", "see"}, {"seen", "see"},
      {"took", "take"}, {"taken", "take"}, {"gave", "give"}, {"given", "give"},
      {"came", "come"}, {"made", "make"}, {"said", "say"}, {"says", "say"},
      {"got", "get"}, {"gotten", "get"}, {"knew", "know"}, {"known", "know"},
      {"thought", "think"}, {"told", "tell"}, {"found", "find"}, {"left", "leave"},
      {"felt", "feel"}, {"kept", "keep"}, {"began", "begin"}, {"begun", "begin"},
      {"brought", "bring"}, {"bought", "buy"}, {"wrote", "write"}, {"written", "write"},
      {"sat", "sit"}, {"stood", "stand"}, {"lost", "lose"}, {"paid", "pay"}, {"met", "meet"},
      {"led", "lead"}, {"held", "hold"}, {"spoke", "speak"}, {"spoken", "speak"},
      {"grew", "grow"}, {"grown", "grow"}, {"fell", "fall"}, {"fallen", "fall"},
      {"drove", "drive"}, {"driven", "drive"}, {"rode", "ride"}, {"ridden", "ride"},
      {"flew", "fly"}, {"flown", "fly"}, {"threw", "throw"}, {"thrown", "throw"},
      {"caught", "catch"}, {"taught", "teach"}, {"fought", "fight"}, {"sought", "seek"},
      {"sang", "sing"}, {"sung", "sing"}, {"swam", "swim"}, {"swum", "swim"},
      {"drank", "drink"}, {"drunk", "drink"}, {"wore", "wear"}, {"worn", "wear"},
      {"won", "win"}, {"sold", "sell"}, {"sent", "send"}, {"built", "build"},
      {"spent", "spend"}, {"slept", "sleep"}, {"woke", "wake"}, {"woken", "wake"},
      {"broke", "break"}, {"broken", "break"}, {"chose", "choose"}, {"chosen", "choose"},
      {"froze", "freeze"}, {"frozen", "freeze"}, {"stole", "steal"}, {"stolen", "steal"},
      {"shot", "shoot"}, {"hung", "hang"}, {"dug", "dig"}, {"fed", "feed"}, {"bled", "bleed"},
      {"fled", "flee"}, {"rose", "rise"}, {"risen", "rise"}, {"lay", "lie"}, {"lain", "lie"},
      {"laid", "lay"}, {"heard", "hear"}, {"meant", "mean"}, {"understood", "understand"},
      {"struck", "strike"}, {"stuck", "stick"}, {"swung", "swing"}, {"hid", "hide"},
      {"hidden", "hide"}, {"bit", "bite"}, {"bitten", "bite"}, {"blew", "blow"},
      {"blown", "blow"}, {"drew", "draw"}, {"drawn", "draw"}, {"shook", "shake"},
      {"shaken", "shake"}, {"forgot", "forget"}, {"forgotten", "forget"},
      {"killed", "kill"}, {"using", "use"}, {"used", "use"}, {"uses", "use"},
      {"dying", "die"}, {"died", "die"}, {"lying", "lie"}, {"lied", "lie"}, {"lies", "lie"},
      {"tying", "tie"}, {"tied", "tie"}, {"ties", "tie"},
      {"men", "man"}, {"women", "woman"}, {"children", "child"}, {"people", "person"},
      {"feet", "foot"}, {"teeth", "tooth"}, {"mice", "mouse"}, {"geese", "goose"},
      {"oxen", "ox"}, {"knives", "knife"}, {"wives", "wife"}, {"lives", "life"},
      {"leaves", "leaf"}, {"wolves", "wolf"}, {"halves", "half"}, {"shelves", "shelf"},
      {"movies", "movie"}, {"cookies", "cookie"}, {"ladies", "lady"}, {"police", "police"},
      {"better", "good"}, {"best", "good"}, {"worse", "bad"}, {"worst", "bad"},
  };
  return table;
}

// Words the suffix rules leave alone.
const std::unordered_set<std::string_view>& protected_words() {
  static const std::unordered_set<std::string_view> set = {
      "news", "always", "perhaps", "series", "species", "physics", "mathematics", "economics",
      "politics", "lens", "gas", "bus", "this", "thus", "plus", "nothing", "something",
      "anything", "everything", "morning", "evening", "ceiling", "wedding", "during", "ring",
      "king", "thing", "spring", "string", "sing", "bring", "sling", "wing", "swing", "sibling",
      "hundred", "sacred", "naked", "wicked", "red", "bed", "shed", "seed", "need", "speed",
      "feed", "bleed", "breed", "weed", "proceed", "succeed", "exceed", "indeed",
      "united", "according", "interesting"};
  return set;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool has_vowel(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_vowel(s[i]) || (s[i] == 'y' && i > 0)) return true;
  }
  return false;
}

bool is_consonant_at(std::string_view s, std::size_t i) {
  char c = s[i];
  if (c < 'a' || c > 'z') return false;
  if (is_vowel(c)) return false;
  if (c == 'y') return i == 0 || !is_consonant_at(s, i - 1);
  return true;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

int vowel_groups(std::string_view s) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool v = !is_consonant_at(s, i);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Repairs a stem left after removing -ing or -ed: undoubles a final
// consonant pair ("runn" -> "run") or restores a silent e ("mak" -> "make").
std::string repair_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant_at(stem, n - 1)) {
    char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z' && c != 'f') stem.pop_back();
    return stem;
  }
  const char last = stem[n - 1];
  if (last == 'v' || last == 'c' || last == 'u' || (last == 'z' && n >= 2)) {
    return stem + "e";
  }
  if (n >= 3 && last == 'l' && is_consonant_at(stem, n - 2) && stem[n - 2] != 'r' &&
      stem[n - 2] != 'l') {
    return stem + "e";
  }
  // single syllable ending consonant-vowel-consonant: "smil" -> "smile"
  if (n >= 3 && vowel_groups(stem) == 1 && is_consonant_at(stem, n - 1) &&
      !is_consonant_at(stem, n - 2) && is_consonant_at(stem, n - 3) && last != 'w' &&
      last != 'x' && last != 'y' && stem[n - 2] != 'y') {
    return stem + "e";
  }
  return stem;
}

// One rewriting step. lemmatize() iterates it to a fixed point.
std::string lemma_step(const std::string& t) {
  const bool stop = is_stopword(t);
  auto guarded = [&](std::string candidate) {
    if (stop != is_stopword(candidate)) return t;
    return candidate;
  };
  if (auto it = irregular_forms().find(t); it != irregular_forms().end()) {
    return guarded(std::string(it->second));
  }
  if (stop || protected_words().count(t)) return t;
  const std::size_t n = t.size();
  std::string_view s = t;

  if (n > 4 && (ends_with(s, "ies") || ends_with(s, "ied"))) {
    return guarded(std::string(s.substr(0, n - 3)) + "y");
  }
  if (ends_with(s, "sses") || ends_with(s, "ches") || ends_with(s, "shes") ||
      ends_with(s, "xes") || ends_with(s, "zzes")) {
    return guarded(std::string(s.substr(0, n - 2)));
  }
  if (n > 3 && ends_with(s, "s") && !ends_with(s, "ss") && !ends_with(s, "us") &&
      !ends_with(s, "is")) {
    return guarded(std::string(s.substr(0, n - 1)));
  }
  if (n > 5 && ends_with(s, "ing")) {
    auto stem = s.substr(0, n - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return guarded(repair_stem(std::string(stem)));
  }
  if (n > 4 && ends_with(s, "ed") && !ends_with(s, "eed")) {
    auto stem = s.substr(0, n - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return guarded(repair_stem(std::string(stem)));
  }
  return t;
}

const std::unordered_set<std::string_view>& verb_lexicon() {
  static const std::unordered_set<std::string_view> set = {
      "be", "have", "do", "say", "go", "get", "make", "know", "think", "take", "see", "come",
      "want", "look", "use", "find", "give", "tell", "work", "call", "try", "ask", "need",
      "feel", "become", "leave", "put", "mean", "keep", "let", "begin", "seem", "help", "talk",
      "turn", "start", "show", "hear", "play", "run", "move", "live", "believe", "hold",
      "bring", "happen", "write", "provide", "sit", "stand", "lose", "pay", "meet", "include",
      "continue", "set", "learn", "change", "lead", "understand", "watch", "follow", "stop",
      "create", "speak", "read", "allow", "add", "spend", "grow", "walk", "win", "offer",
      "remember", "love", "consider", "appear", "buy", "wait", "serve", "die", "send",
      "expect", "build", "stay", "fall", "cut", "reach", "kill", "remain", "suggest", "raise",
      "pass", "sell", "require", "report", "decide", "pull", "ride", "dance", "sing", "swim",
      "eat", "drink", "cook", "slice", "jump", "climb", "drive", "fly", "throw", "catch",
      "kick", "hit", "push", "pour", "peel", "chop", "fry", "bake", "mix", "wash", "sleep",
      "wake", "smile", "laugh", "cry", "fight", "shoot", "attack", "arrest", "kiss", "hug",
      "wear", "paint", "draw", "carry", "lift", "fill", "pick", "place", "lie", "lay", "rise",
      "sit", "lean", "stir", "spread", "break", "choose", "freeze", "steal", "hang", "dig",
      "feed", "bleed", "flee", "strike", "stick", "swing", "hide", "bite", "blow", "shake",
      "forget", "teach", "seek", "agree", "announce", "claim", "warn", "deny", "accuse",
      "charge", "sentence", "vote", "elect", "launch", "join", "plan", "hope", "fear",
      "explain", "describe", "receive", "return", "enter", "leave", "arrive", "visit",
      "crash", "burn", "explode", "injure", "rescue", "protest", "release", "sign", "ban",
      "rally", "surge", "drop", "rise", "fire", "hire", "beat", "defeat", "score", "host",
      "ski", "surf", "skate", "type", "dress", "brush", "comb", "slide", "roll", "bounce",
      "chase", "bark", "graze", "gallop", "sniff", "lick", "crawl", "float", "sail",
      "paddle", "row", "stare", "gaze", "point", "wave", "clap", "shout", "yell", "whisper",
      "chew", "taste", "smell", "touch", "squeeze", "fold", "tie", "open", "close", "shut",
      "clean", "rinse", "grate", "knead", "season", "blend", "whisk", "melt", "boil",
      "steam", "grill", "roast", "saute"};
  return set;
}

const std::unordered_set<std::string_view>& adjective_lexicon() {
  static const std::unordered_set<std::string_view> set = {
      "good", "new", "first", "last", "long", "great", "little", "own", "other", "old",
      "right", "big", "high", "different", "small", "large", "next", "early", "young",
      "important", "few", "public", "bad", "same", "able", "black", "white", "red", "blue",
      "green", "yellow", "brown", "orange", "pink", "purple", "gray", "grey", "dark", "light",
      "happy", "sad", "hot", "cold", "warm", "cool", "fast", "slow", "tall", "short", "pretty",
      "ugly", "strong", "weak", "full", "empty", "rich", "poor", "free", "easy", "hard",
      "heavy", "dirty", "wet", "dry", "nice", "real", "true", "false", "wrong", "sure",
      "clear", "whole", "low", "late", "main", "major", "likely", "recent", "certain",
      "similar", "entire", "huge", "tiny", "quick", "quiet", "loud", "busy", "calm", "safe",
      "deep", "wide", "narrow", "thin", "thick", "fat", "soft", "smooth", "rough", "sharp",
      "bright", "fresh", "raw", "ripe", "sweet", "sour", "bitter", "spicy", "angry", "scared",
      "afraid", "alone", "alive", "dead", "sick", "ill", "fine", "cute", "fluffy", "furry",
      "wooden", "golden", "silver", "striped", "spotted", "male", "female", "former",
      "foreign", "local", "national", "international", "military", "nuclear", "political",
      "economic", "financial", "senior", "chief", "top", "single", "double", "several",
      "many", "much", "less", "least", "more", "most"};
  return set;
}

const std::unordered_set<std::string_view>& heuristic_exclusions() {
  static const std::unordered_set<std::string_view> set = {
      "thing", "king", "ring", "something", "nothing", "anything", "everything", "morning",
      "evening", "ceiling", "wedding", "spring", "string", "during", "hundred", "animal",
      "hospital", "capital", "signal", "metal", "festival", "interval", "crystal", "pedal",
      "petal", "sandal", "medal", "rival", "arrival", "proposal", "approval", "trial",
      "journal", "tribunal", "cathedral", "mammal", "canal", "sibling", "ceiling", "building",
      "clothing", "pudding", "duckling", "seedling", "bed", "shed", "sled", "noise", "cruise",
      "premise", "promise", "expertise", "merchandise", "paradise", "olive", "native",
      "detective", "executive", "representative", "motive", "objective"};
  return set;
}

}  // namespace

bool is_stopword(std::string_view token) { return stopword_set().count(token) > 0; }

std::span<const std::string_view> stopword_list() { return kStopwords; }

std::string lemmatize(std::string_view token) {
  std::string current(token);
  for (int guard = 0; guard < 16; ++guard) {
    std::string next = lemma_step(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

PosClass pos_class(std::string_view token) {
  if (token.empty()) return PosClass::other;
  if (verb_lexicon().count(token)) return PosClass::verb;
  if (adjective_lexicon().count(token)) return PosClass::adjective;
  const std::string lemma = lemmatize(token);
  if (verb_lexicon().count(lemma)) return PosClass::verb;
  if (adjective_lexicon().count(lemma)) return PosClass::adjective;
  if (heuristic_exclusions().count(token) || heuristic_exclusions().count(lemma)) {
    return PosClass::other;
  }
  auto fires = [&](std::string_view suffix) {
    return token.size() >= suffix.size() + 3 && ends_with(token, suffix);
  };
  for (std::string_view suffix : {"ing", "ed", "ize", "ise"}) {
    if (fires(suffix)) return PosClass::verb;
  }
  for (std::string_view suffix : {"ous", "ful", "able", "ible", "ive", "al"}) {
    if (fires(suffix)) return PosClass::adjective;
  }
  return PosClass::other;
}

}  // namespace stsb
