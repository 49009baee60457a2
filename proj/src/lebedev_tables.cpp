// Lebedev rules on the unit sphere; weights sum to 4*pi.
#include "qgtk/quadrature.hpp"

#include <stdexcept>

namespace qgtk {
namespace {

const double kLeb26[26][4] = {
    {1.0, 0.0, 0.0, 0.5983986006837702},
    {-1.0, 0.0, 0.0, 0.5983986006837702},
    {0.0, 1.0, 0.0, 0.5983986006837702},
    {0.0, -1.0, 0.0, 0.5983986006837702},
    {0.0, 0.0, 1.0, 0.5983986006837702},
    {0.0, 0.0, -1.0, 0.5983986006837702},
    {0.0, 0.7071067811865476, 0.7071067811865476, 0.4787188805470161},
    {0.0, -0.7071067811865476, 0.7071067811865476, 0.4787188805470161},
    {0.0, 0.7071067811865476, -0.7071067811865476, 0.4787188805470161},
    {0.0, -0.7071067811865476, -0.7071067811865476, 0.4787188805470161},
    {0.7071067811865476, 0.0, 0.7071067811865476, 0.4787188805470161},
    {0.7071067811865476, 0.0, -0.7071067811865476, 0.4787188805470161},
    {-0.7071067811865476, 0.0, 0.7071067811865476, 0.4787188805470161},
    {-0.7071067811865476, 0.0, -0.7071067811865476, 0.4787188805470161},
    {0.7071067811865476, 0.7071067811865476, 0.0, 0.4787188805470161},
    {-0.7071067811865476, 0.7071067811865476, 0.0, 0.4787188805470161},
    {0.7071067811865476, -0.7071067811865476, 0.0, 0.4787188805470161},
    {-0.7071067811865476, -0.7071067811865476, 0.0, 0.4787188805470161},
    {0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.4039190554615448},
    {-0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.4039190554615448},
    {0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.4039190554615448},
    {0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.4039190554615448},
    {-0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.4039190554615448},
    {0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.4039190554615448},
    {-0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.4039190554615448},
    {-0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.4039190554615448},
};

const double kLeb50[50][4] = {
    {1.0, 0.0, 0.0, 0.1595729601823387},
    {-1.0, 0.0, 0.0, 0.1595729601823387},
    {0.0, 1.0, 0.0, 0.1595729601823387},
    {0.0, -1.0, 0.0, 0.1595729601823387},
    {0.0, 0.0, 1.0, 0.1595729601823387},
    {0.0, 0.0, -1.0, 0.1595729601823387},
    {0.0, 0.7071067811865476, 0.7071067811865476, 0.2836852625463799},
    {0.0, -0.7071067811865476, 0.7071067811865476, 0.2836852625463799},
    {0.0, 0.7071067811865476, -0.7071067811865476, 0.2836852625463799},
    {0.0, -0.7071067811865476, -0.7071067811865476, 0.2836852625463799},
    {0.7071067811865476, 0.0, 0.7071067811865476, 0.2836852625463799},
    {0.7071067811865476, 0.0, -0.7071067811865476, 0.2836852625463799},
    {-0.7071067811865476, 0.0, 0.7071067811865476, 0.2836852625463799},
    {-0.7071067811865476, 0.0, -0.7071067811865476, 0.2836852625463799},
    {0.7071067811865476, 0.7071067811865476, 0.0, 0.2836852625463799},
    {-0.7071067811865476, 0.7071067811865476, 0.0, 0.2836852625463799},
    {0.7071067811865476, -0.7071067811865476, 0.0, 0.2836852625463799},
    {-0.7071067811865476, -0.7071067811865476, 0.0, 0.2836852625463799},
    {0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.2650718801466388},
    {-0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.2650718801466388},
    {0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.2650718801466388},
    {0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.2650718801466388},
    {-0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.2650718801466388},
    {0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.2650718801466388},
    {-0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.2650718801466388},
    {-0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.2650718801466388},
    {0.3015113445777636, 0.3015113445777636, 0.9045340337332909, 0.2535056108973113},
    {-0.3015113445777636, 0.3015113445777636, 0.9045340337332909, 0.2535056108973113},
    {0.3015113445777636, -0.3015113445777636, 0.9045340337332909, 0.2535056108973113},
    {0.3015113445777636, 0.3015113445777636, -0.9045340337332909, 0.2535056108973113},
    {-0.3015113445777636, -0.3015113445777636, 0.9045340337332909, 0.2535056108973113},
    {-0.3015113445777636, 0.3015113445777636, -0.9045340337332909, 0.2535056108973113},
    {0.3015113445777636, -0.3015113445777636, -0.9045340337332909, 0.2535056108973113},
    {-0.3015113445777636, -0.3015113445777636, -0.9045340337332909, 0.2535056108973113},
    {-0.3015113445777636, 0.9045340337332909, 0.3015113445777636, 0.2535056108973113},
    {0.3015113445777636, -0.9045340337332909, 0.3015113445777636, 0.2535056108973113},
    {0.3015113445777636, 0.9045340337332909, -0.3015113445777636, 0.2535056108973113},
    {-0.3015113445777636, -0.9045340337332909, 0.3015113445777636, 0.2535056108973113},
    {-0.3015113445777636, 0.9045340337332909, -0.3015113445777636, 0.2535056108973113},
    {0.3015113445777636, -0.9045340337332909, -0.3015113445777636, 0.2535056108973113},
    {-0.3015113445777636, -0.9045340337332909, -0.3015113445777636, 0.2535056108973113},
    {0.3015113445777636, 0.9045340337332909, 0.3015113445777636, 0.2535056108973113},
    {0.9045340337332909, 0.3015113445777636, 0.3015113445777636, 0.2535056108973113},
    {-0.9045340337332909, 0.3015113445777636, 0.3015113445777636, 0.2535056108973113},
    {0.9045340337332909, -0.3015113445777636, 0.3015113445777636, 0.2535056108973113},
    {0.9045340337332909, 0.3015113445777636, -0.3015113445777636, 0.2535056108973113},
    {-0.9045340337332909, -0.3015113445777636, 0.3015113445777636, 0.2535056108973113},
    {-0.9045340337332909, 0.3015113445777636, -0.3015113445777636, 0.2535056108973113},
    {0.9045340337332909, -0.3015113445777636, -0.3015113445777636, 0.2535056108973113},
    {-0.9045340337332909, -0.3015113445777636, -0.3015113445777636, 0.2535056108973113},
};

const double kLeb110[110][4] = {
    {1.0, 0.0, 0.0, 0.048107465851396594},
    {-1.0, 0.0, 0.0, 0.048107465851396594},
    {0.0, 1.0, 0.0, 0.048107465851396594},
    {0.0, -1.0, 0.0, 0.048107465851396594},
    {0.0, 0.0, 1.0, 0.048107465851396594},
    {0.0, 0.0, -1.0, 0.048107465851396594},
    {0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.12307173528167017},
    {-0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.12307173528167017},
    {0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.12307173528167017},
    {0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.12307173528167017},
    {-0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.12307173528167017},
    {0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.12307173528167017},
    {-0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.12307173528167017},
    {-0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.12307173528167017},
    {0.1851156353447362, 0.1851156353447362, 0.9651240350865941, 0.1031917340883304},
    {-0.1851156353447362, 0.1851156353447362, 0.9651240350865941, 0.1031917340883304},
    {0.1851156353447362, -0.1851156353447362, 0.9651240350865941, 0.1031917340883304},
    {0.1851156353447362, 0.1851156353447362, -0.9651240350865941, 0.1031917340883304},
    {-0.1851156353447362, -0.1851156353447362, 0.9651240350865941, 0.1031917340883304},
    {-0.1851156353447362, 0.1851156353447362, -0.9651240350865941, 0.1031917340883304},
    {0.1851156353447362, -0.1851156353447362, -0.9651240350865941, 0.1031917340883304},
    {-0.1851156353447362, -0.1851156353447362, -0.9651240350865941, 0.1031917340883304},
    {-0.1851156353447362, 0.9651240350865941, 0.1851156353447362, 0.1031917340883304},
    {0.1851156353447362, -0.9651240350865941, 0.1851156353447362, 0.1031917340883304},
    {0.1851156353447362, 0.9651240350865941, -0.1851156353447362, 0.1031917340883304},
    {-0.1851156353447362, -0.9651240350865941, 0.1851156353447362, 0.1031917340883304},
    {-0.1851156353447362, 0.9651240350865941, -0.1851156353447362, 0.1031917340883304},
    {0.1851156353447362, -0.9651240350865941, -0.1851156353447362, 0.1031917340883304},
    {-0.1851156353447362, -0.9651240350865941, -0.1851156353447362, 0.1031917340883304},
    {0.1851156353447362, 0.9651240350865941, 0.1851156353447362, 0.1031917340883304},
    {0.9651240350865941, 0.1851156353447362, 0.1851156353447362, 0.1031917340883304},
    {-0.9651240350865941, 0.1851156353447362, 0.1851156353447362, 0.1031917340883304},
    {0.9651240350865941, -0.1851156353447362, 0.1851156353447362, 0.1031917340883304},
    {0.9651240350865941, 0.1851156353447362, -0.1851156353447362, 0.1031917340883304},
    {-0.9651240350865941, -0.1851156353447362, 0.1851156353447362, 0.1031917340883304},
    {-0.9651240350865941, 0.1851156353447362, -0.1851156353447362, 0.1031917340883304},
    {0.9651240350865941, -0.1851156353447362, -0.1851156353447362, 0.1031917340883304},
    {-0.9651240350865941, -0.1851156353447362, -0.1851156353447362, 0.1031917340883304},
    {0.6904210483822922, 0.6904210483822922, 0.21595729184584844, 0.1249450968725133},
    {-0.6904210483822922, 0.6904210483822922, 0.21595729184584844, 0.1249450968725133},
    {0.6904210483822922, -0.6904210483822922, 0.21595729184584844, 0.1249450968725133},
    {0.6904210483822922, 0.6904210483822922, -0.21595729184584844, 0.1249450968725133},
    {-0.6904210483822922, -0.6904210483822922, 0.21595729184584844, 0.1249450968725133},
    {-0.6904210483822922, 0.6904210483822922, -0.21595729184584844, 0.1249450968725133},
    {0.6904210483822922, -0.6904210483822922, -0.21595729184584844, 0.1249450968725133},
    {-0.6904210483822922, -0.6904210483822922, -0.21595729184584844, 0.1249450968725133},
    {-0.6904210483822922, 0.21595729184584844, 0.6904210483822922, 0.1249450968725133},
    {0.6904210483822922, -0.21595729184584844, 0.6904210483822922, 0.1249450968725133},
    {0.6904210483822922, 0.21595729184584844, -0.6904210483822922, 0.1249450968725133},
    {-0.6904210483822922, -0.21595729184584844, 0.6904210483822922, 0.1249450968725133},
    {-0.6904210483822922, 0.21595729184584844, -0.6904210483822922, 0.1249450968725133},
    {0.6904210483822922, -0.21595729184584844, -0.6904210483822922, 0.1249450968725133},
    {-0.6904210483822922, -0.21595729184584844, -0.6904210483822922, 0.1249450968725133},
    {0.6904210483822922, 0.21595729184584844, 0.6904210483822922, 0.1249450968725133},
    {0.21595729184584844, 0.6904210483822922, 0.6904210483822922, 0.1249450968725133},
    {-0.21595729184584844, 0.6904210483822922, 0.6904210483822922, 0.1249450968725133},
    {0.21595729184584844, -0.6904210483822922, 0.6904210483822922, 0.1249450968725133},
    {0.21595729184584844, 0.6904210483822922, -0.6904210483822922, 0.1249450968725133},
    {-0.21595729184584844, -0.6904210483822922, 0.6904210483822922, 0.1249450968725133},
    {-0.21595729184584844, 0.6904210483822922, -0.6904210483822922, 0.1249450968725133},
    {0.21595729184584844, -0.6904210483822922, -0.6904210483822922, 0.1249450968725133},
    {-0.21595729184584844, -0.6904210483822922, -0.6904210483822922, 0.1249450968725133},
    {0.3956894730559419, 0.3956894730559419, 0.8287699812525923, 0.12058024902852789},
    {-0.3956894730559419, 0.3956894730559419, 0.8287699812525923, 0.12058024902852789},
    {0.3956894730559419, -0.3956894730559419, 0.8287699812525923, 0.12058024902852789},
    {0.3956894730559419, 0.3956894730559419, -0.8287699812525923, 0.12058024902852789},
    {-0.3956894730559419, -0.3956894730559419, 0.8287699812525923, 0.12058024902852789},
    {-0.3956894730559419, 0.3956894730559419, -0.8287699812525923, 0.12058024902852789},
    {0.3956894730559419, -0.3956894730559419, -0.8287699812525923, 0.12058024902852789},
    {-0.3956894730559419, -0.3956894730559419, -0.8287699812525923, 0.12058024902852789},
    {-0.3956894730559419, 0.8287699812525923, 0.3956894730559419, 0.12058024902852789},
    {0.3956894730559419, -0.8287699812525923, 0.3956894730559419, 0.12058024902852789},
    {0.3956894730559419, 0.8287699812525923, -0.3956894730559419, 0.12058024902852789},
    {-0.3956894730559419, -0.8287699812525923, 0.3956894730559419, 0.12058024902852789},
    {-0.3956894730559419, 0.8287699812525923, -0.3956894730559419, 0.12058024902852789},
    {0.3956894730559419, -0.8287699812525923, -0.3956894730559419, 0.12058024902852789},
    {-0.3956894730559419, -0.8287699812525923, -0.3956894730559419, 0.12058024902852789},
    {0.3956894730559419, 0.8287699812525923, 0.3956894730559419, 0.12058024902852789},
    {0.8287699812525923, 0.3956894730559419, 0.3956894730559419, 0.12058024902852789},
    {-0.8287699812525923, 0.3956894730559419, 0.3956894730559419, 0.12058024902852789},
    {0.8287699812525923, -0.3956894730559419, 0.3956894730559419, 0.12058024902852789},
    {0.8287699812525923, 0.3956894730559419, -0.3956894730559419, 0.12058024902852789},
    {-0.8287699812525923, -0.3956894730559419, 0.3956894730559419, 0.12058024902852789},
    {-0.8287699812525923, 0.3956894730559419, -0.3956894730559419, 0.12058024902852789},
    {0.8287699812525923, -0.3956894730559419, -0.3956894730559419, 0.12058024902852789},
    {-0.8287699812525923, -0.3956894730559419, -0.3956894730559419, 0.12058024902852789},
    {0.4783690288121502, 0.8781589106040661, 0.0, 0.12183091738552138},
    {-0.4783690288121502, 0.8781589106040661, 0.0, 0.12183091738552138},
    {0.4783690288121502, -0.8781589106040661, 0.0, 0.12183091738552138},
    {-0.4783690288121502, -0.8781589106040661, 0.0, 0.12183091738552138},
    {0.8781589106040661, 0.4783690288121502, 0.0, 0.12183091738552138},
    {-0.8781589106040661, 0.4783690288121502, 0.0, 0.12183091738552138},
    {0.8781589106040661, -0.4783690288121502, 0.0, 0.12183091738552138},
    {-0.8781589106040661, -0.4783690288121502, 0.0, 0.12183091738552138},
    {0.4783690288121502, 0.0, 0.8781589106040661, 0.12183091738552138},
    {-0.4783690288121502, 0.0, 0.8781589106040661, 0.12183091738552138},
    {0.4783690288121502, 0.0, -0.8781589106040661, 0.12183091738552138},
    {-0.4783690288121502, 0.0, -0.8781589106040661, 0.12183091738552138},
    {0.8781589106040661, 0.0, 0.4783690288121502, 0.12183091738552138},
    {-0.8781589106040661, 0.0, 0.4783690288121502, 0.12183091738552138},
    {0.8781589106040661, 0.0, -0.4783690288121502, 0.12183091738552138},
    {-0.8781589106040661, 0.0, -0.4783690288121502, 0.12183091738552138},
    {0.0, 0.4783690288121502, 0.8781589106040661, 0.12183091738552138},
    {0.0, -0.4783690288121502, 0.8781589106040661, 0.12183091738552138},
    {0.0, 0.4783690288121502, -0.8781589106040661, 0.12183091738552138},
    {0.0, -0.4783690288121502, -0.8781589106040661, 0.12183091738552138},
    {0.0, 0.8781589106040661, 0.4783690288121502, 0.12183091738552138},
    {0.0, -0.8781589106040661, 0.4783690288121502, 0.12183091738552138},
    {0.0, 0.8781589106040661, -0.4783690288121502, 0.12183091738552138},
    {0.0, -0.8781589106040661, -0.4783690288121502, 0.12183091738552138},
};

const double kLeb194[194][4] = {
    {1.0, 0.0, 0.0, 0.022397550621038466},
    {-1.0, 0.0, 0.0, 0.022397550621038466},
    {0.0, 1.0, 0.0, 0.022397550621038466},
    {0.0, -1.0, 0.0, 0.022397550621038466},
    {0.0, 0.0, 1.0, 0.022397550621038466},
    {0.0, 0.0, -1.0, 0.022397550621038466},
    {0.0, 0.7071067811865476, 0.7071067811865476, 0.07184075893484736},
    {0.0, -0.7071067811865476, 0.7071067811865476, 0.07184075893484736},
    {0.0, 0.7071067811865476, -0.7071067811865476, 0.07184075893484736},
    {0.0, -0.7071067811865476, -0.7071067811865476, 0.07184075893484736},
    {0.7071067811865476, 0.0, 0.7071067811865476, 0.07184075893484736},
    {0.7071067811865476, 0.0, -0.7071067811865476, 0.07184075893484736},
    {-0.7071067811865476, 0.0, 0.7071067811865476, 0.07184075893484736},
    {-0.7071067811865476, 0.0, -0.7071067811865476, 0.07184075893484736},
    {0.7071067811865476, 0.7071067811865476, 0.0, 0.07184075893484736},
    {-0.7071067811865476, 0.7071067811865476, 0.0, 0.07184075893484736},
    {0.7071067811865476, -0.7071067811865476, 0.0, 0.07184075893484736},
    {-0.7071067811865476, -0.7071067811865476, 0.0, 0.07184075893484736},
    {0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.07003719860124849},
    {-0.5773502691896257, 0.5773502691896257, 0.5773502691896257, 0.07003719860124849},
    {0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.07003719860124849},
    {0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.07003719860124849},
    {-0.5773502691896257, -0.5773502691896257, 0.5773502691896257, 0.07003719860124849},
    {0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.07003719860124849},
    {-0.5773502691896257, 0.5773502691896257, -0.5773502691896257, 0.07003719860124849},
    {-0.5773502691896257, -0.5773502691896257, -0.5773502691896257, 0.07003719860124849},
    {0.6712973442695226, 0.6712973442695226, 0.3141969941825863, 0.07048105416807013},
    {-0.6712973442695226, 0.6712973442695226, 0.3141969941825863, 0.07048105416807013},
    {0.6712973442695226, -0.6712973442695226, 0.3141969941825863, 0.07048105416807013},
    {0.6712973442695226, 0.6712973442695226, -0.3141969941825863, 0.07048105416807013},
    {-0.6712973442695226, -0.6712973442695226, 0.3141969941825863, 0.07048105416807013},
    {-0.6712973442695226, 0.6712973442695226, -0.3141969941825863, 0.07048105416807013},
    {0.6712973442695226, -0.6712973442695226, -0.3141969941825863, 0.07048105416807013},
    {-0.6712973442695226, -0.6712973442695226, -0.3141969941825863, 0.07048105416807013},
    {-0.6712973442695226, 0.3141969941825863, 0.6712973442695226, 0.07048105416807013},
    {0.6712973442695226, -0.3141969941825863, 0.6712973442695226, 0.07048105416807013},
    {0.6712973442695226, 0.3141969941825863, -0.6712973442695226, 0.07048105416807013},
    {-0.6712973442695226, -0.3141969941825863, 0.6712973442695226, 0.07048105416807013},
    {-0.6712973442695226, 0.3141969941825863, -0.6712973442695226, 0.07048105416807013},
    {0.6712973442695226, -0.3141969941825863, -0.6712973442695226, 0.07048105416807013},
    {-0.6712973442695226, -0.3141969941825863, -0.6712973442695226, 0.07048105416807013},
    {0.6712973442695226, 0.3141969941825863, 0.6712973442695226, 0.07048105416807013},
    {0.3141969941825863, 0.6712973442695226, 0.6712973442695226, 0.07048105416807013},
    {-0.3141969941825863, 0.6712973442695226, 0.6712973442695226, 0.07048105416807013},
    {0.3141969941825863, -0.6712973442695226, 0.6712973442695226, 0.07048105416807013},
    {0.3141969941825863, 0.6712973442695226, -0.6712973442695226, 0.07048105416807013},
    {-0.3141969941825863, -0.6712973442695226, 0.6712973442695226, 0.07048105416807013},
    {-0.3141969941825863, 0.6712973442695226, -0.6712973442695226, 0.07048105416807013},
    {0.3141969941825863, -0.6712973442695226, -0.6712973442695226, 0.07048105416807013},
    {-0.3141969941825863, -0.6712973442695226, -0.6712973442695226, 0.07048105416807013},
    {0.2892465627575439, 0.2892465627575439, 0.9125090968674737, 0.06482032680351046},
    {-0.2892465627575439, 0.2892465627575439, 0.9125090968674737, 0.06482032680351046},
    {0.2892465627575439, -0.2892465627575439, 0.9125090968674737, 0.06482032680351046},
    {0.2892465627575439, 0.2892465627575439, -0.9125090968674737, 0.06482032680351046},
    {-0.2892465627575439, -0.2892465627575439, 0.9125090968674737, 0.06482032680351046},
    {-0.2892465627575439, 0.2892465627575439, -0.9125090968674737, 0.06482032680351046},
    {0.2892465627575439, -0.2892465627575439, -0.9125090968674737, 0.06482032680351046},
    {-0.2892465627575439, -0.2892465627575439, -0.9125090968674737, 0.06482032680351046},
    {-0.2892465627575439, 0.9125090968674737, 0.2892465627575439, 0.06482032680351046},
    {0.2892465627575439, -0.9125090968674737, 0.2892465627575439, 0.06482032680351046},
    {0.2892465627575439, 0.9125090968674737, -0.2892465627575439, 0.06482032680351046},
    {-0.2892465627575439, -0.9125090968674737, 0.2892465627575439, 0.06482032680351046},
    {-0.2892465627575439, 0.9125090968674737, -0.2892465627575439, 0.06482032680351046},
    {0.2892465627575439, -0.9125090968674737, -0.2892465627575439, 0.06482032680351046},
    {-0.2892465627575439, -0.9125090968674737, -0.2892465627575439, 0.06482032680351046},
    {0.2892465627575439, 0.9125090968674737, 0.2892465627575439, 0.06482032680351046},
    {0.9125090968674737, 0.2892465627575439, 0.2892465627575439, 0.06482032680351046},
    {-0.9125090968674737, 0.2892465627575439, 0.2892465627575439, 0.06482032680351046},
    {0.9125090968674737, -0.2892465627575439, 0.2892465627575439, 0.06482032680351046},
    {0.9125090968674737, 0.2892465627575439, -0.2892465627575439, 0.06482032680351046},
    {-0.9125090968674737, -0.2892465627575439, 0.2892465627575439, 0.06482032680351046},
    {-0.9125090968674737, 0.2892465627575439, -0.2892465627575439, 0.06482032680351046},
    {0.9125090968674737, -0.2892465627575439, -0.2892465627575439, 0.06482032680351046},
    {-0.9125090968674737, -0.2892465627575439, -0.2892465627575439, 0.06482032680351046},
    {0.4446933178717437, 0.4446933178717437, 0.7774932193147671, 0.069350927593711},
    {-0.4446933178717437, 0.4446933178717437, 0.7774932193147671, 0.069350927593711},
    {0.4446933178717437, -0.4446933178717437, 0.7774932193147671, 0.069350927593711},
    {0.4446933178717437, 0.4446933178717437, -0.7774932193147671, 0.069350927593711},
    {-0.4446933178717437, -0.4446933178717437, 0.7774932193147671, 0.069350927593711},
    {-0.4446933178717437, 0.4446933178717437, -0.7774932193147671, 0.069350927593711},
    {0.4446933178717437, -0.4446933178717437, -0.7774932193147671, 0.069350927593711},
    {-0.4446933178717437, -0.4446933178717437, -0.7774932193147671, 0.069350927593711},
    {-0.4446933178717437, 0.7774932193147671, 0.4446933178717437, 0.069350927593711},
    {0.4446933178717437, -0.7774932193147671, 0.4446933178717437, 0.069350927593711},
    {0.4446933178717437, 0.7774932193147671, -0.4446933178717437, 0.069350927593711},
    {-0.4446933178717437, -0.7774932193147671, 0.4446933178717437, 0.069350927593711},
    {-0.4446933178717437, 0.7774932193147671, -0.4446933178717437, 0.069350927593711},
    {0.4446933178717437, -0.7774932193147671, -0.4446933178717437, 0.069350927593711},
    {-0.4446933178717437, -0.7774932193147671, -0.4446933178717437, 0.069350927593711},
    {0.4446933178717437, 0.7774932193147671, 0.4446933178717437, 0.069350927593711},
    {0.7774932193147671, 0.4446933178717437, 0.4446933178717437, 0.069350927593711},
    {-0.7774932193147671, 0.4446933178717437, 0.4446933178717437, 0.069350927593711},
    {0.7774932193147671, -0.4446933178717437, 0.4446933178717437, 0.069350927593711},
    {0.7774932193147671, 0.4446933178717437, -0.4446933178717437, 0.069350927593711},
    {-0.7774932193147671, -0.4446933178717437, 0.4446933178717437, 0.069350927593711},
    {-0.7774932193147671, 0.4446933178717437, -0.4446933178717437, 0.069350927593711},
    {0.7774932193147671, -0.4446933178717437, -0.4446933178717437, 0.069350927593711},
    {-0.7774932193147671, -0.4446933178717437, -0.4446933178717437, 0.069350927593711},
    {0.1299335447650067, 0.1299335447650067, 0.9829723027072532, 0.05160728216651316},
    {-0.1299335447650067, 0.1299335447650067, 0.9829723027072532, 0.05160728216651316},
    {0.1299335447650067, -0.1299335447650067, 0.9829723027072532, 0.05160728216651316},
    {0.1299335447650067, 0.1299335447650067, -0.9829723027072532, 0.05160728216651316},
    {-0.1299335447650067, -0.1299335447650067, 0.9829723027072532, 0.05160728216651316},
    {-0.1299335447650067, 0.1299335447650067, -0.9829723027072532, 0.05160728216651316},
    {0.1299335447650067, -0.1299335447650067, -0.9829723027072532, 0.05160728216651316},
    {-0.1299335447650067, -0.1299335447650067, -0.9829723027072532, 0.05160728216651316},
    {-0.1299335447650067, 0.9829723027072532, 0.1299335447650067, 0.05160728216651316},
    {0.1299335447650067, -0.9829723027072532, 0.1299335447650067, 0.05160728216651316},
    {0.1299335447650067, 0.9829723027072532, -0.1299335447650067, 0.05160728216651316},
    {-0.1299335447650067, -0.9829723027072532, 0.1299335447650067, 0.05160728216651316},
    {-0.1299335447650067, 0.9829723027072532, -0.1299335447650067, 0.05160728216651316},
    {0.1299335447650067, -0.9829723027072532, -0.1299335447650067, 0.05160728216651316},
    {-0.1299335447650067, -0.9829723027072532, -0.1299335447650067, 0.05160728216651316},
    {0.1299335447650067, 0.9829723027072532, 0.1299335447650067, 0.05160728216651316},
    {0.9829723027072532, 0.1299335447650067, 0.1299335447650067, 0.05160728216651316},
    {-0.9829723027072532, 0.1299335447650067, 0.1299335447650067, 0.05160728216651316},
    {0.9829723027072532, -0.1299335447650067, 0.1299335447650067, 0.05160728216651316},
    {0.9829723027072532, 0.1299335447650067, -0.1299335447650067, 0.05160728216651316},
    {-0.9829723027072532, -0.1299335447650067, 0.1299335447650067, 0.05160728216651316},
    {-0.9829723027072532, 0.1299335447650067, -0.1299335447650067, 0.05160728216651316},
    {0.9829723027072532, -0.1299335447650067, -0.1299335447650067, 0.05160728216651316},
    {-0.9829723027072532, -0.1299335447650067, -0.1299335447650067, 0.05160728216651316},
    {0.3457702197611283, 0.9383192181375916, 0.0, 0.06348336993464156},
    {-0.3457702197611283, 0.9383192181375916, 0.0, 0.06348336993464156},
    {0.3457702197611283, -0.9383192181375916, 0.0, 0.06348336993464156},
    {-0.3457702197611283, -0.9383192181375916, 0.0, 0.06348336993464156},
    {0.9383192181375916, 0.3457702197611283, 0.0, 0.06348336993464156},
    {-0.9383192181375916, 0.3457702197611283, 0.0, 0.06348336993464156},
    {0.9383192181375916, -0.3457702197611283, 0.0, 0.06348336993464156},
    {-0.9383192181375916, -0.3457702197611283, 0.0, 0.06348336993464156},
    {0.3457702197611283, 0.0, 0.9383192181375916, 0.06348336993464156},
    {-0.3457702197611283, 0.0, 0.9383192181375916, 0.06348336993464156},
    {0.3457702197611283, 0.0, -0.9383192181375916, 0.06348336993464156},
    {-0.3457702197611283, 0.0, -0.9383192181375916, 0.06348336993464156},
    {0.9383192181375916, 0.0, 0.3457702197611283, 0.06348336993464156},
    {-0.9383192181375916, 0.0, 0.3457702197611283, 0.06348336993464156},
    {0.9383192181375916, 0.0, -0.3457702197611283, 0.06348336993464156},
    {-0.9383192181375916, 0.0, -0.3457702197611283, 0.06348336993464156},
    {0.0, 0.3457702197611283, 0.9383192181375916, 0.06348336993464156},
    {0.0, -0.3457702197611283, 0.9383192181375916, 0.06348336993464156},
    {0.0, 0.3457702197611283, -0.9383192181375916, 0.06348336993464156},
    {0.0, -0.3457702197611283, -0.9383192181375916, 0.06348336993464156},
    {0.0, 0.9383192181375916, 0.3457702197611283, 0.06348336993464156},
    {0.0, -0.9383192181375916, 0.3457702197611283, 0.06348336993464156},
    {0.0, 0.9383192181375916, -0.3457702197611283, 0.06348336993464156},
    {0.0, -0.9383192181375916, -0.3457702197611283, 0.06348336993464156},
    {0.159041710538353, 0.8360360154824589, 0.525118572443642, 0.06949515747104322},
    {-0.159041710538353, 0.8360360154824589, 0.525118572443642, 0.06949515747104322},
    {0.159041710538353, -0.8360360154824589, 0.525118572443642, 0.06949515747104322},
    {0.159041710538353, 0.8360360154824589, -0.525118572443642, 0.06949515747104322},
    {-0.159041710538353, -0.8360360154824589, 0.525118572443642, 0.06949515747104322},
    {0.159041710538353, -0.8360360154824589, -0.525118572443642, 0.06949515747104322},
    {-0.159041710538353, 0.8360360154824589, -0.525118572443642, 0.06949515747104322},
    {-0.159041710538353, -0.8360360154824589, -0.525118572443642, 0.06949515747104322},
    {0.8360360154824589, 0.159041710538353, 0.525118572443642, 0.06949515747104322},
    {-0.8360360154824589, 0.159041710538353, 0.525118572443642, 0.06949515747104322},
    {0.8360360154824589, -0.159041710538353, 0.525118572443642, 0.06949515747104322},
    {0.8360360154824589, 0.159041710538353, -0.525118572443642, 0.06949515747104322},
    {-0.8360360154824589, -0.159041710538353, 0.525118572443642, 0.06949515747104322},
    {0.8360360154824589, -0.159041710538353, -0.525118572443642, 0.06949515747104322},
    {-0.8360360154824589, 0.159041710538353, -0.525118572443642, 0.06949515747104322},
    {-0.8360360154824589, -0.159041710538353, -0.525118572443642, 0.06949515747104322},
    {0.525118572443642, 0.159041710538353, 0.8360360154824589, 0.06949515747104322},
    {-0.525118572443642, 0.159041710538353, 0.8360360154824589, 0.06949515747104322},
    {0.525118572443642, -0.159041710538353, 0.8360360154824589, 0.06949515747104322},
    {0.525118572443642, 0.159041710538353, -0.8360360154824589, 0.06949515747104322},
    {-0.525118572443642, -0.159041710538353, 0.8360360154824589, 0.06949515747104322},
    {0.525118572443642, -0.159041710538353, -0.8360360154824589, 0.06949515747104322},
    {-0.525118572443642, 0.159041710538353, -0.8360360154824589, 0.06949515747104322},
    {-0.525118572443642, -0.159041710538353, -0.8360360154824589, 0.06949515747104322},
    {0.525118572443642, 0.8360360154824589, 0.159041710538353, 0.06949515747104322},
    {-0.525118572443642, 0.8360360154824589, 0.159041710538353, 0.06949515747104322},
    {0.525118572443642, -0.8360360154824589, 0.159041710538353, 0.06949515747104322},
    {0.525118572443642, 0.8360360154824589, -0.159041710538353, 0.06949515747104322},
    {-0.525118572443642, -0.8360360154824589, 0.159041710538353, 0.06949515747104322},
    {0.525118572443642, -0.8360360154824589, -0.159041710538353, 0.06949515747104322},
    {-0.525118572443642, 0.8360360154824589, -0.159041710538353, 0.06949515747104322},
    {-0.525118572443642, -0.8360360154824589, -0.159041710538353, 0.06949515747104322},
    {0.159041710538353, 0.525118572443642, 0.8360360154824589, 0.06949515747104322},
    {-0.159041710538353, 0.525118572443642, 0.8360360154824589, 0.06949515747104322},
    {0.159041710538353, -0.525118572443642, 0.8360360154824589, 0.06949515747104322},
    {0.159041710538353, 0.525118572443642, -0.8360360154824589, 0.06949515747104322},
    {-0.159041710538353, -0.525118572443642, 0.8360360154824589, 0.06949515747104322},
    {0.159041710538353, -0.525118572443642, -0.8360360154824589, 0.06949515747104322},
    {-0.159041710538353, 0.525118572443642, -0.8360360154824589, 0.06949515747104322},
    {-0.159041710538353, -0.525118572443642, -0.8360360154824589, 0.06949515747104322},
    {0.8360360154824589, 0.525118572443642, 0.159041710538353, 0.06949515747104322},
    {-0.8360360154824589, 0.525118572443642, 0.159041710538353, 0.06949515747104322},
    {0.8360360154824589, -0.525118572443642, 0.159041710538353, 0.06949515747104322},
    {0.8360360154824589, 0.525118572443642, -0.159041710538353, 0.06949515747104322},
    {-0.8360360154824589, -0.525118572443642, 0.159041710538353, 0.06949515747104322},
    {0.8360360154824589, -0.525118572443642, -0.159041710538353, 0.06949515747104322},
    {-0.8360360154824589, 0.525118572443642, -0.159041710538353, 0.06949515747104322},
    {-0.8360360154824589, -0.525118572443642, -0.159041710538353, 0.06949515747104322},
};
}  // namespace

std::vector<Direction> lebedev(int npts) {
    const double (*tab)[4] = nullptr;
    switch (npts) {
        case 26: tab = kLeb26; break;
        case 50: tab = kLeb50; break;
        case 110: tab = kLeb110; break;
        case 194: tab = kLeb194; break;
        default: throw std::invalid_argument("lebedev: supported sizes are 26, 50, 110, 194");
    }
    std::vector<Direction> d(npts);
    for (int i = 0; i < npts; ++i) d[i] = {{tab[i][0], tab[i][1], tab[i][2]}, tab[i][3]};
    return d;
}

}  // namespace qgtk
