#include "tables_data.hpp"

namespace repoecg::enrich::tables {

namespace {

// Categories: female, male, mostly_female, mostly_male, androgynous.
constexpr std::string_view kGenderTsv = R"(# repoecg-gender-table v1
alice	female
amanda	female
amy	female
andrea	mostly_female
angela	female
anna	female
barbara	female
betty	female
carol	female
carolyn	female
catherine	female
christina	female
claire	female
clara	female
diana	female
donna	female
dorothy	female
elena	female
elizabeth	female
emily	female
emma	female
erin	female
eva	female
grace	female
hannah	female
heidi	female
helen	female
ingrid	female
irene	female
jane	female
janet	female
jennifer	female
jessica	female
julia	female
karen	female
kate	female
katherine	female
laura	female
linda	female
lisa	female
lucia	female
margaret	female
maria	female
marie	female
martha	female
mary	female
monica	female
nancy	female
natalia	female
nina	female
olga	female
patricia	female
paula	female
rachel	female
rebecca	female
rosa	female
ruth	female
sandra	female
sarah	female
silvia	female
sofia	female
sophie	female
susan	female
tanya	female
teresa	female
valerie	female
wendy	female
yvonne	female
zoe	female
aaron	male
adam	male
alan	male
albert	male
alexander	male
andrew	male
anthony	male
arthur	male
benjamin	male
bernard	male
bob	male
brian	male
bruce	male
carl	male
carlos	male
charles	male
christopher	male
daniel	male
dave	male
david	male
dennis	male
derek	male
diego	male
donald	male
douglas	male
edward	male
eric	male
ethan	male
felix	male
frank	male
fred	male
gary	male
george	male
gregory	male
hans	male
harold	male
henry	male
hugo	male
ian	male
ivan	male
jack	male
jacob	male
james	male
jason	male
javier	male
jeffrey	male
john	male
jonathan	male
jose	male
joseph	male
juan	male
keith	male
kenneth	male
kevin	male
klaus	male
larry	male
lars	male
lawrence	male
luis	male
marco	male
mark	male
martin	male
matthew	male
michael	male
miguel	male
nathan	male
nicholas	male
oliver	male
oscar	male
patrick	male
paul	male
pedro	male
peter	male
philip	male
raymond	male
richard	male
robert	male
roger	male
ronald	male
ryan	male
samuel	male
scott	male
sergio	male
stefan	male
stephen	male
steven	male
thomas	male
timothy	male
victor	male
walter	male
william	male
alex	mostly_male
andy	mostly_male
ashley	mostly_female
casey	androgynous
charlie	mostly_male
chris	mostly_male
dana	mostly_female
jamie	androgynous
jan	mostly_male
jordan	mostly_male
kim	mostly_female
lee	mostly_male
leslie	mostly_female
morgan	androgynous
pat	androgynous
robin	mostly_female
sam	mostly_male
sasha	mostly_female
taylor	androgynous
terry	mostly_male
)";

// Phrase → country. Keys are normalized (lowercase, punctuation stripped).
constexpr std::string_view kCountryTsv = R"(# repoecg-country-table v1
argentina	Argentina
australia	Australia
austria	Austria
bangladesh	Bangladesh
belgium	Belgium
brazil	Brazil
brasil	Brazil
bulgaria	Bulgaria
canada	Canada
chile	Chile
china	China
colombia	Colombia
croatia	Croatia
czech republic	Czech Republic
czechia	Czech Republic
denmark	Denmark
egypt	Egypt
estonia	Estonia
finland	Finland
france	France
germany	Germany
deutschland	Germany
greece	Greece
hungary	Hungary
iceland	Iceland
india	India
indonesia	Indonesia
iran	Iran
ireland	Ireland
israel	Israel
italy	Italy
italia	Italy
japan	Japan
kenya	Kenya
south korea	South Korea
korea	South Korea
republic of korea	South Korea
latvia	Latvia
lithuania	Lithuania
luxembourg	Luxembourg
malaysia	Malaysia
mexico	Mexico
netherlands	Netherlands
the netherlands	Netherlands
holland	Netherlands
new zealand	New Zealand
nigeria	Nigeria
norway	Norway
pakistan	Pakistan
peru	Peru
philippines	Philippines
poland	Poland
polska	Poland
portugal	Portugal
romania	Romania
russia	Russia
russian federation	Russia
saudi arabia	Saudi Arabia
serbia	Serbia
singapore	Singapore
slovakia	Slovakia
slovenia	Slovenia
south africa	South Africa
spain	Spain
españa	Spain
espana	Spain
sweden	Sweden
switzerland	Switzerland
taiwan	Taiwan
thailand	Thailand
turkey	Turkey
ukraine	Ukraine
united arab emirates	United Arab Emirates
uae	United Arab Emirates
united kingdom	United Kingdom
uk	United Kingdom
great britain	United Kingdom
britain	United Kingdom
england	United Kingdom
scotland	United Kingdom
wales	United Kingdom
northern ireland	United Kingdom
united states	United States
united states of america	United States
usa	United States
us	United States
america	United States
vietnam	Vietnam
alabama	United States
alaska	United States
arizona	United States
arkansas	United States
california	United States
colorado	United States
connecticut	United States
delaware	United States
florida	United States
georgia	United States
hawaii	United States
idaho	United States
illinois	United States
indiana	United States
iowa	United States
kansas	United States
kentucky	United States
louisiana	United States
maine	United States
maryland	United States
massachusetts	United States
michigan	United States
minnesota	United States
mississippi	United States
missouri	United States
montana	United States
nebraska	United States
nevada	United States
new hampshire	United States
new jersey	United States
new mexico	United States
new york	United States
north carolina	United States
north dakota	United States
ohio	United States
oklahoma	United States
oregon	United States
pennsylvania	United States
rhode island	United States
south carolina	United States
south dakota	United States
tennessee	United States
texas	United States
utah	United States
vermont	United States
virginia	United States
washington	United States
west virginia	United States
wisconsin	United States
wyoming	United States
al	United States
ak	United States
az	United States
ar	United States
ca	United States
co	United States
ct	United States
de	United States
fl	United States
ga	United States
hi	United States
id	United States
il	United States
ks	United States
ky	United States
la	United States
md	United States
ma	United States
mi	United States
mn	United States
ms	United States
mo	United States
mt	United States
ne	United States
nv	United States
nh	United States
nj	United States
nm	United States
ny	United States
nc	United States
nd	United States
oh	United States
ok	United States
pa	United States
ri	United States
sc	United States
sd	United States
tn	United States
tx	United States
ut	United States
vt	United States
va	United States
wa	United States
wv	United States
wi	United States
wy	United States
dc	United States
washington dc	United States
amsterdam	Netherlands
athens	Greece
atlanta	United States
austin	United States
bangalore	India
bengaluru	India
barcelona	Spain
beijing	China
berlin	Germany
bern	Switzerland
boston	United States
brussels	Belgium
bucharest	Romania
budapest	Hungary
buenos aires	Argentina
cambridge	United Kingdom
chicago	United States
copenhagen	Denmark
delhi	India
new delhi	India
dublin	Ireland
edinburgh	United Kingdom
geneva	Switzerland
hamburg	Germany
helsinki	Finland
hong kong	China
istanbul	Turkey
knoxville	United States
kyiv	Ukraine
kiev	Ukraine
lisbon	Portugal
london	United Kingdom
los angeles	United States
madrid	Spain
melbourne	Australia
milan	Italy
montreal	Canada
moscow	Russia
mumbai	India
munich	Germany
münchen	Germany
new york city	United States
nyc	United States
oslo	Norway
ottawa	Canada
oxford	United Kingdom
paris	France
prague	Czech Republic
rome	Italy
san francisco	United States
santiago	Chile
sao paulo	Brazil
são paulo	Brazil
seattle	United States
seoul	South Korea
shanghai	China
singapore city	Singapore
stockholm	Sweden
sydney	Australia
tel aviv	Israel
tokyo	Japan
toronto	Canada
vancouver	Canada
vienna	Austria
warsaw	Poland
zurich	Switzerland
zürich	Switzerland
)";

} // namespace

std::string_view gender_tsv() { return kGenderTsv; }
std::string_view country_tsv() { return kCountryTsv; }

const std::vector<std::pair<std::string, double>>& sentiment_words() {
    static const std::vector<std::pair<std::string, double>> words = {
        {"amazing", 1},   {"appreciate", 1}, {"appreciated", 1}, {"awesome", 1},
        {"clean", 1},     {"cool", 1},       {"correct", 1},     {"elegant", 1},
        {"excellent", 1}, {"fantastic", 1},  {"fast", 1},        {"fixed", 1},
        {"glad", 1},      {"good", 1},       {"great", 1},       {"happy", 1},
        {"helpful", 1},   {"lgtm", 1},       {"love", 1},        {"neat", 1},
        {"nice", 1},      {"perfect", 1},    {"pleased", 1},     {"solid", 1},
        {"thank", 1},     {"thanks", 1},     {"useful", 1},      {"wonderful", 1},
        {"works", 1},
        {"annoying", -1}, {"awful", -1},     {"bad", -1},        {"broken", -1},
        {"bug", -1},      {"confusing", -1}, {"crash", -1},      {"fail", -1},
        {"failed", -1},   {"fails", -1},     {"hate", -1},       {"horrible", -1},
        {"leak", -1},     {"messy", -1},     {"regression", -1}, {"sad", -1},
        {"slow", -1},     {"terrible", -1},  {"ugly", -1},       {"unhappy", -1},
        {"useless", -1},  {"worse", -1},     {"worst", -1},      {"wrong", -1},
    };
    return words;
}

const std::set<std::string>& imperative_verbs() {
    static const std::set<std::string> verbs = {
        "add",      "avoid",  "change", "check",    "consider", "delete", "document",
        "extract",  "fix",    "handle", "inline",   "merge",    "move",   "refactor",
        "remove",   "rename", "replace", "revert",  "simplify", "split",  "test",
        "try",      "update", "use",
    };
    return verbs;
}

const std::set<std::string>& profanity() {
    static const std::set<std::string> words = {
        "ass",     "asshole", "bastard", "bullshit", "crap",   "damn", "dammit",
        "dumb",    "fuck",    "fucking", "idiot",    "jerk",   "moron", "shit",
        "stupid",  "suck",    "sucks",   "wtf",
    };
    return words;
}

const std::set<std::string>& generic_email_providers() {
    static const std::set<std::string> providers = {
        "126.com",       "163.com",      "aol.com",        "fastmail.com", "gmail.com",
        "gmx.com",       "gmx.de",       "gmx.net",        "googlemail.com",
        "hey.com",       "hotmail.com",  "icloud.com",     "live.com",     "mail.com",
        "mail.ru",       "me.com",       "msn.com",        "outlook.com",  "protonmail.com",
        "proton.me",     "qq.com",       "yahoo.com",      "yandex.com",   "yandex.ru",
        "ymail.com",     "zoho.com",     "users.noreply.github.com",
    };
    return providers;
}

} // namespace repoecg::enrich::tables
