//! Word pools for synthetic organic traffic.
//!
//! Organic text comes from sentence frames whose `{slot}` markers are filled
//! from the lists below, which gives a few hundred thousand distinct tweets of
//! ordinary English letter diversity.

pub(super) const FRAMES: &[&str] = &[
    "Just got back from {place} and honestly it was {feel}",
    "Anyone else watching {show} tonight? The {thing} scene was {feel}",
    "Spent the whole {time} fixing my {thing}, send coffee",
    "My {relative} just called to ask about {topic} again",
    "Thinking about trying {food} for dinner, any recommendations near {place}?",
    "Traffic on the way to {place} was {feel} this {time}",
    "Can't believe the {team} game went to overtime last {time}",
    "Finally finished reading that book about {topic}, it was {feel}",
    "Why does my {thing} always stop working right before a deadline",
    "Heading to {place} with my {relative} for the weekend",
    "Does anyone know a good place to buy a used {thing} around {place}?",
    "The new episode of {show} dropped and I have thoughts about {topic}",
    "Made {food} from scratch for the first time and it turned out {feel}",
    "Rain all {time} here, perfect excuse to stay in and watch {show}",
    "Quick reminder to call your {relative} this {time}",
    "Our team meeting about {topic} ran two hours over, classic",
    "First day at the new job near {place}, wish me luck",
    "The line at {place} this {time} was ridiculous, waited forty minutes",
    "Has anyone actually read the fine print on {topic}? Asking for a friend",
    "Watching the {team} highlights while eating cold {food}",
    "Took the dog to {place} and she refused to leave the fountain",
    "I keep forgetting to charge my {thing} and then I panic at noon",
    "Learning about {topic} on a random {time} because why not",
    "Lunch today was {food} again, third time this week",
    "My {relative} recommended {show} and now I cannot stop watching",
    "Somebody at {place} just asked me for directions in three languages",
    "Reading the comments on that {topic} article was a mistake",
    "The {team} jerseys this season look {feel} if you ask me",
    "Trying to plan a trip to {place} on a tight budget, tips welcome",
    "Our neighbor is learning the drums and it is a long {time}",
    "Finally replaced my old {thing} after six years of loyal service",
    "Grabbed {food} with my {relative} after the {team} match",
    "Podcast recommendation: anything about {topic} from last {time}",
    "Bus was late again this {time}, walked to {place} instead",
    "Cleaning out the garage and found my {relative}'s old {thing}",
    "Hot take: {food} is better the next day",
    "Volunteered at {place} this {time}, met some really interesting people",
    "If you have opinions about {topic}, my inbox is open",
    "The sunset over {place} yesterday looked {feel}",
    "Late night {food} run because the {team} game had me stressed",
    "Did a five mile walk around {place} and my legs are done",
    "Started a small garden on the balcony, mostly herbs and tomatoes for {food}",
    "Meeting an old friend from school at {place} later, so {feel}",
    "Every {time} I tell myself I will go to bed early and every {time} I lie",
    "The documentary on {topic} was {feel}, worth a watch",
    "Kids spent the whole {time} building a fort out of the {thing} box",
    "Office coffee machine broke again, productivity down across {place}",
    "Rewatching {show} from the start because the ending confused me",
];

pub(super) const PLACES: &[&str] = &[
    "the farmers market",
    "downtown",
    "the library",
    "the airport",
    "the beach",
    "the mall",
    "the park",
    "the gym",
    "the train station",
    "my old school",
    "the museum",
    "the harbor",
    "the stadium",
    "the lake",
    "the city center",
    "the bakery on fifth",
    "the community center",
    "the hospital",
    "campus",
    "the hardware store",
    "the zoo",
    "the waterfront",
    "the old town square",
];

pub(super) const THINGS: &[&str] = &[
    "laptop",
    "bike",
    "phone",
    "printer",
    "car",
    "router",
    "coffee maker",
    "headphones",
    "washing machine",
    "keyboard",
    "camera",
    "tablet",
    "kettle",
    "vacuum",
    "guitar",
    "bookshelf",
    "monitor",
    "microwave",
    "smartwatch",
];

pub(super) const TIMES: &[&str] = &[
    "morning",
    "afternoon",
    "evening",
    "weekend",
    "night",
    "week",
    "Monday",
    "Friday",
    "Sunday",
    "lunch break",
];

pub(super) const FEELINGS: &[&str] = &[
    "fine",
    "okay",
    "interesting",
    "strange",
    "different",
    "alright",
    "busy",
    "long",
    "quiet",
    "crowded",
    "not bad",
    "surprising",
    "calm",
    "chaotic",
    "weird",
    "good",
    "great",
    "nice",
    "lovely",
    "boring",
    "awful",
];

pub(super) const SHOWS: &[&str] = &[
    "the cooking competition",
    "that detective series",
    "the space documentary",
    "the nature show",
    "the late night talk show",
    "the baking contest",
    "the courtroom drama",
    "the travel series",
    "that sitcom reboot",
];

pub(super) const RELATIVES: &[&str] = &[
    "mom", "dad", "sister", "brother", "aunt", "uncle", "grandma", "grandpa", "cousin", "roommate",
    "neighbor", "coworker",
];

pub(super) const TOPICS: &[&str] = &[
    "tax season",
    "the housing market",
    "electric cars",
    "ancient Rome",
    "sleep science",
    "urban gardening",
    "the city budget",
    "space travel",
    "climate data",
    "retirement plans",
    "local elections",
    "medieval history",
    "school lunches",
    "public transit",
    "ocean currents",
    "bird migration",
];

pub(super) const FOODS: &[&str] = &[
    "pizza",
    "tacos",
    "ramen",
    "pancakes",
    "curry",
    "lasagna",
    "sushi",
    "chili",
    "dumplings",
    "falafel",
    "banana bread",
    "soup",
    "pad thai",
];

pub(super) const TEAMS: &[&str] = &[
    "Hawks", "Rangers", "Lions", "Comets", "Pirates", "Wolves", "Giants", "Falcons", "Royals",
    "Tigers",
];

pub(super) const HASHTAGS: &[&str] = &[
    "#mondaymotivation",
    "#weekend",
    "#foodie",
    "#travel",
    "#tbt",
    "#news",
    "#music",
    "#fitness",
    "#gameday",
    "#books",
];

/// Client strings with rough market shares, summing to 1.
pub(super) const SOURCES: &[(&str, f64)] = &[
    ("Twitter for iPhone", 0.36),
    ("Twitter for Android", 0.30),
    ("Twitter Web Client", 0.15),
    ("TweetDeck", 0.05),
    ("Twitter for iPad", 0.05),
    ("Instagram", 0.03),
    ("Hootsuite", 0.03),
    ("IFTTT", 0.03),
];

/// Language tags with shares, summing to 1.
pub(super) const LANGS: &[(&str, f64)] = &[
    ("en", 0.80),
    ("es", 0.06),
    ("pt", 0.04),
    ("fr", 0.03),
    ("ja", 0.03),
    ("und", 0.04),
];

pub(super) const TIME_ZONES: &[&str] = &[
    "Eastern Time (US & Canada)",
    "Central Time (US & Canada)",
    "Pacific Time (US & Canada)",
    "Mountain Time (US & Canada)",
    "London",
    "Amsterdam",
    "Madrid",
    "Tokyo",
    "Sydney",
    "Brasilia",
    "Hawaii",
    "Quito",
    "Athens",
    "Berlin",
    "Alaska",
];

pub(super) const LOCATIONS: &[&str] = &[
    "New York, NY",
    "Los Angeles",
    "Chicago, IL",
    "Houston",
    "London, UK",
    "Toronto",
    "somewhere",
    "Texas",
    "California, USA",
    "Manila",
    "Lagos",
    "Sao Paulo",
    "Paris",
    "Mumbai",
    "the internet",
    "Florida",
    "Ohio",
    "Seattle, WA",
    "Boston",
    "Atlanta, GA",
    "Madrid",
    "Berlin",
    "Tokyo",
    "Sydney",
    "Dublin",
    "Mexico City",
    "Nairobi",
    "Denver",
    "Phoenix, AZ",
    "Austin, TX",
];

pub(super) const SURNAMES: &[&str] = &[
    "Smith",
    "Johnson",
    "Williams",
    "Brown",
    "Jones",
    "Garcia",
    "Miller",
    "Davis",
    "Rodriguez",
    "Martinez",
    "Lopez",
    "Wilson",
    "Anderson",
    "Taylor",
    "Thomas",
    "Moore",
    "Jackson",
    "Lee",
    "Nguyen",
    "Kim",
    "Patel",
    "Khan",
];

pub(super) const HANDLE_WORDS: &[&str] = &[
    "pixel", "shadow", "crypto", "lunar", "ninja", "retro", "cosmic", "turbo", "mango", "static",
    "velvet", "neon", "quiet", "rogue", "atomic", "echo",
];

pub(super) const BIO_PARTS: &[&str] = &[
    "coffee lover",
    "runner",
    "dad of two",
    "mom",
    "teacher",
    "nurse",
    "software engineer",
    "student",
    "dog person",
    "cat person",
    "gamer",
    "bookworm",
    "amateur chef",
    "photographer",
    "music nerd",
    "traveler",
    "opinions my own",
    "sports fan",
    "gardener",
    "writer",
    "artist",
    "podcast addict",
    "history buff",
    "night owl",
    "film buff",
    "hiker",
];

pub(super) const BOT_CLIENTS: &[&str] = &[
    "PromoBlast",
    "SocialPilot Pro",
    "AutoPoster 3",
    "BulkTweet",
    "GrowthEngine",
];

pub(super) const SPAM_BIOS: &[&str] = &[
    "Get 1000 followers FAST click below",
    "Best deals online every day, follow for more",
    "Official promo account, DM for business",
    "Win prizes daily, just follow and retweet",
];
