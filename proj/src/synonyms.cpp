#include "mgtkit/obfuscation.hpp"

#include <sstream>

namespace mgtkit {

namespace {

// Hand-curated synonym groups of common English words (comma-separated, all
// lowercase). Groups are small and conservative so substitutions stay
// roughly meaning-preserving.
const char* kGroups[] = {
    "big,large,huge,sizable",
    "small,little,tiny,petite",
    "fast,quick,rapid,swift",
    "slow,sluggish,unhurried",
    "happy,glad,joyful,cheerful",
    "sad,unhappy,sorrowful,downcast",
    "good,fine,decent",
    "great,excellent,superb,outstanding",
    "bad,poor,lousy",
    "terrible,awful,dreadful,horrible",
    "smart,clever,intelligent,bright",
    "stupid,foolish,dumb",
    "beautiful,lovely,gorgeous,pretty",
    "ugly,unsightly,hideous",
    "strong,sturdy,powerful,robust",
    "weak,feeble,frail",
    "old,ancient,aged,elderly",
    "new,fresh,recent,novel",
    "young,youthful,juvenile",
    "rich,wealthy,affluent",
    "poor,impoverished,destitute",
    "hard,difficult,tough,arduous",
    "easy,simple,effortless",
    "important,significant,crucial,vital",
    "unimportant,trivial,minor",
    "begin,start,commence",
    "end,finish,conclude,terminate",
    "make,create,produce,construct",
    "destroy,demolish,wreck",
    "help,assist,aid,support",
    "hurt,harm,injure,damage",
    "say,state,declare,remark",
    "tell,inform,notify",
    "ask,inquire,query",
    "answer,reply,respond",
    "show,display,exhibit,reveal",
    "hide,conceal,obscure",
    "find,discover,locate,uncover",
    "lose,misplace,forfeit",
    "get,obtain,acquire,receive",
    "give,provide,supply,grant",
    "take,grab,seize",
    "keep,retain,preserve,maintain",
    "walk,stroll,amble,saunter",
    "run,sprint,dash,jog",
    "jump,leap,bound,hop",
    "look,gaze,glance,peer",
    "see,observe,notice,spot",
    "watch,monitor,observe",
    "hear,listen,perceive",
    "think,ponder,consider,reflect",
    "know,understand,comprehend,grasp",
    "believe,trust,accept",
    "want,desire,wish,crave",
    "need,require,demand",
    "like,enjoy,appreciate,fancy",
    "hate,despise,loathe,detest",
    "love,adore,cherish",
    "eat,consume,devour",
    "drink,sip,gulp",
    "sleep,slumber,doze,rest",
    "work,labor,toil",
    "play,frolic,romp",
    "talk,speak,chat,converse",
    "shout,yell,scream,holler",
    "whisper,murmur,mutter",
    "laugh,chuckle,giggle",
    "cry,weep,sob,wail",
    "smile,grin,beam",
    "frown,scowl,glower",
    "move,shift,relocate",
    "stay,remain,linger",
    "come,arrive,approach",
    "leave,depart,exit",
    "go,proceed,advance",
    "return,reappear,revisit",
    "buy,purchase,procure",
    "sell,vend,peddle",
    "build,construct,erect,assemble",
    "break,shatter,fracture,crack",
    "fix,repair,mend,restore",
    "open,unlock,unseal",
    "close,shut,seal",
    "push,shove,thrust",
    "pull,tug,drag,haul",
    "throw,toss,hurl,fling",
    "catch,snag,capture",
    "hold,grip,clasp,clutch",
    "drop,release,discard",
    "carry,haul,transport,convey",
    "send,dispatch,transmit",
    "bring,fetch,deliver",
    "choose,select,pick,elect",
    "decide,determine,resolve",
    "change,alter,modify,transform",
    "stop,halt,cease,quit",
    "continue,persist,proceed",
    "wait,pause,linger",
    "hurry,rush,hasten",
    "try,attempt,endeavor,strive",
    "succeed,prosper,flourish,thrive",
    "fail,falter,flounder",
    "win,triumph,prevail",
    "fight,battle,combat,struggle",
    "argue,quarrel,bicker,dispute",
    "agree,concur,consent",
    "refuse,decline,reject",
    "allow,permit,authorize",
    "forbid,prohibit,ban",
    "teach,instruct,educate,train",
    "learn,study,absorb",
    "remember,recall,recollect",
    "forget,overlook,neglect",
    "write,compose,pen,draft",
    "read,peruse,scan",
    "draw,sketch,illustrate",
    "sing,chant,croon",
    "dance,twirl,sway",
    "cook,prepare,bake",
    "clean,scrub,tidy,polish",
    "wash,rinse,launder",
    "cut,slice,chop,carve",
    "grow,expand,enlarge,increase",
    "shrink,contract,diminish,decrease",
    "rise,ascend,climb",
    "fall,descend,drop,tumble",
    "fly,soar,glide,hover",
    "swim,paddle,wade",
    "drive,steer,pilot",
    "ride,cruise,travel",
    "house,home,dwelling,residence",
    "car,automobile,vehicle",
    "road,street,avenue,route",
    "path,trail,track,lane",
    "city,town,metropolis",
    "village,hamlet,settlement",
    "country,nation,land",
    "world,globe,earth",
    "place,spot,location,site",
    "area,region,zone,district",
    "room,chamber,quarters",
    "door,entrance,doorway,gateway",
    "window,pane,opening",
    "wall,barrier,partition",
    "floor,ground,surface",
    "water,liquid,fluid",
    "fire,flame,blaze",
    "air,atmosphere,breeze",
    "earth,soil,dirt,ground",
    "mountain,peak,summit,ridge",
    "river,stream,creek,brook",
    "sea,ocean,deep",
    "lake,pond,lagoon",
    "forest,woods,woodland,grove",
    "tree,sapling,timber",
    "flower,blossom,bloom",
    "grass,turf,lawn",
    "animal,creature,beast",
    "bird,fowl,avian",
    "fish,trout,salmon",
    "dog,hound,canine,pup",
    "cat,feline,kitty",
    "horse,steed,stallion,mare",
    "food,fare,nourishment,cuisine",
    "meal,feast,banquet",
    "bread,loaf,roll",
    "meat,flesh,beef",
    "fruit,produce,berry",
    "money,cash,currency,funds",
    "price,cost,charge,fee",
    "job,occupation,profession,trade",
    "worker,laborer,employee",
    "boss,manager,supervisor,chief",
    "friend,companion,pal,buddy",
    "enemy,foe,adversary,rival",
    "family,household,kin",
    "child,kid,youngster",
    "baby,infant,newborn",
    "man,gentleman,fellow",
    "woman,lady,female",
    "people,folks,persons,individuals",
    "crowd,throng,multitude,mob",
    "group,cluster,bunch,collection",
    "team,squad,crew",
    "leader,chief,head,commander",
    "king,monarch,ruler,sovereign",
    "story,tale,narrative,account",
    "book,volume,tome",
    "word,term,expression",
    "name,title,label",
    "idea,notion,concept,thought",
    "question,query,inquiry",
    "problem,issue,difficulty,trouble",
    "solution,answer,remedy,fix",
    "reason,cause,motive,grounds",
    "result,outcome,consequence,effect",
    "part,portion,piece,segment",
    "whole,entirety,total",
    "way,manner,method,fashion",
    "kind,sort,type,variety",
    "thing,object,item,article",
    "time,era,epoch,period",
    "moment,instant,second",
    "day,daytime,date",
    "night,nighttime,evening",
    "morning,dawn,daybreak,sunrise",
    "year,annum,twelvemonth",
    "week,sevennight",
    "hour,sixty-minutes",
    "beginning,start,outset,onset",
    "middle,center,midpoint",
    "top,summit,peak,apex",
    "bottom,base,foot",
    "side,flank,edge",
    "front,fore,face",
    "back,rear,reverse",
    "inside,interior,innards",
    "outside,exterior,outdoors",
    "light,illumination,glow,radiance",
    "dark,darkness,gloom,shadow",
    "color,hue,shade,tint",
    "sound,noise,din",
    "silence,quiet,stillness,hush",
    "voice,tone,speech",
    "music,melody,tune,song",
    "picture,image,photo,illustration",
    "heat,warmth,fever",
    "cold,chill,frost",
    "rain,shower,downpour,drizzle",
    "snow,sleet,flurry",
    "wind,gust,gale,breeze",
    "storm,tempest,squall",
    "sun,sunshine,sunlight",
    "moon,lunar-disc,crescent",
    "star,celestial-body",
    "sky,heavens,firmament",
    "cloud,mist,vapor,fog",
    "strength,power,might,force",
    "speed,pace,velocity,tempo",
    "size,magnitude,dimension,bulk",
    "shape,form,figure,contour",
    "number,figure,digit,numeral",
    "amount,quantity,sum,measure",
    "truth,fact,reality,verity",
    "lie,falsehood,fib,untruth",
    "danger,peril,hazard,risk",
    "safety,security,protection",
    "fear,dread,fright,terror",
    "courage,bravery,valor,nerve",
    "hope,optimism,expectation",
    "despair,hopelessness,gloom",
    "anger,rage,fury,wrath",
    "calm,peace,serenity,tranquility",
    "pride,dignity,self-respect",
    "shame,disgrace,dishonor",
    "surprise,astonishment,amazement",
    "boredom,tedium,monotony",
    "interest,curiosity,fascination",
    "pleasure,delight,enjoyment,gratification",
    "pain,ache,agony,discomfort",
    "health,wellness,fitness,vigor",
    "illness,sickness,disease,ailment",
    "life,existence,being",
    "death,demise,passing",
    "war,conflict,warfare,hostilities",
    "peace,harmony,accord,truce",
    "law,statute,regulation,rule",
    "crime,offense,felony,misdeed",
    "school,academy,institute",
    "teacher,instructor,educator,tutor",
    "student,pupil,learner,scholar",
    "doctor,physician,medic",
    "nurse,caregiver,attendant",
    "farmer,grower,cultivator",
    "soldier,warrior,fighter,trooper",
    "sailor,seaman,mariner",
    "artist,painter,creator",
    "writer,author,scribe,novelist",
    "scientist,researcher,scholar",
    "machine,device,apparatus,contraption",
    "tool,implement,instrument,utensil",
    "weapon,arm,armament",
    "clothes,clothing,garments,attire",
    "shoe,boot,footwear",
    "hat,cap,headgear",
    "table,desk,counter",
    "chair,seat,stool,bench",
    "bed,cot,bunk",
    "box,crate,container,carton",
    "bag,sack,pouch,satchel",
    "key,latchkey,opener",
    "letter,note,missive,epistle",
    "paper,document,sheet",
    "pen,quill,stylus",
    "clock,timepiece,chronometer",
    "ship,vessel,boat,craft",
    "plane,aircraft,airplane,jet",
    "train,locomotive,railcar",
    "bridge,overpass,span",
    "tower,spire,turret",
    "castle,fortress,citadel,stronghold",
    "church,chapel,cathedral,temple",
    "market,bazaar,marketplace",
    "shop,store,boutique",
    "hospital,clinic,infirmary",
    "prison,jail,penitentiary",
    "garden,yard,plot,patch",
    "farm,ranch,homestead",
    "field,meadow,pasture,plain",
    "hill,mound,knoll,rise",
    "valley,vale,glen,dale",
    "island,isle,atoll",
    "desert,wasteland,badlands",
    "beach,shore,coast,seaside",
    "cave,cavern,grotto",
    "hole,pit,cavity,hollow",
    "stone,rock,pebble,boulder",
    "sand,grit,gravel",
    "metal,alloy,ore",
    "gold,bullion,treasure",
    "glass,crystal,pane",
    "wood,lumber,timber",
    "often,frequently,regularly,repeatedly",
    "rarely,seldom,infrequently",
    "always,constantly,perpetually,invariably",
    "never,not-once,at-no-time",
    "soon,shortly,presently,promptly",
    "late,tardy,overdue",
    "early,prompt,timely",
    "now,currently,presently",
    "here,hither,hereabouts",
    "there,thither,yonder",
    "everywhere,all-over,throughout",
    "nowhere,no-place",
    "maybe,perhaps,possibly,conceivably",
    "certainly,surely,definitely,undoubtedly",
    "very,extremely,exceedingly,immensely",
    "almost,nearly,practically,virtually",
    "together,jointly,collectively",
    "alone,solo,solitary,unaccompanied",
    "also,additionally,furthermore,moreover",
    "however,nevertheless,nonetheless,still",
    "because,since,as",
    "before,prior-to,ahead-of",
    "after,following,subsequent-to",
    "during,throughout,amid",
    "near,close,nearby,adjacent",
    "far,distant,remote,faraway",
    "above,over,atop",
    "below,beneath,under,underneath",
    "between,amid,among",
    "against,versus,opposing",
    "toward,towards,to",
    "around,about,surrounding",
};

}  // namespace

const SynonymTable& default_synonym_table() {
    static const SynonymTable table = [] {
        SynonymTable t;
        for (const char* raw : kGroups) {
            std::vector<std::string> group;
            std::stringstream ss{std::string(raw)};
            std::string word;
            while (std::getline(ss, word, ',')) group.push_back(word);

            const std::size_t gi = t.groups.size();
            for (const auto& w : group) t.index.emplace(w, gi);
            t.groups.push_back(std::move(group));
        }
        return t;
    }();
    return table;
}

}  // namespace mgtkit
