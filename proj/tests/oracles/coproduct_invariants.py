import sympy as sp, random, math
X=sp.symbols('x1:5',real=True); Y=sp.symbols('y1:5',real=True)
x,y=sp.symbols('x y',real=True)
H={
 'P1':[y,-x,(x**2+y**2)/2],
 'P2':[-1/y,-x/y,-(x**2+y**2)/y],
 'P3':[-1/(2*(1+x**2+y**2)),y/(1+x**2+y**2),-x/(1+x**2+y**2)],
 'P5':[y,-x,x*y,y**2/2,-x**2/2],
 'I4':[1/(x-y),(x+y)/(2*(x-y)),x*y/(x-y)],
 'I5':[-1/(2*y**2),-x/(2*y**2),-x**2/(2*y**2)],
 'I8':[y,-x,x*y],
 'I14A2':[y,-sp.exp(x),sp.exp(-x)],
 'I14B2':[y,-x,-x**2/2],
 'I16':[y,-x,x*y,-x**2/2,-x**3/3],
}
def C(name,h,h0):
    h=[None]+list(h)+[0]*6
    return {
     'P1':h[3]*h0-sp.Rational(1,2)*(h[1]**2+h[2]**2),
     'P2':h[1]*h[3]-h[2]**2,'I4':h[1]*h[3]-h[2]**2,'I5':h[1]*h[3]-h[2]**2,
     'P3':4*h[1]**2+h[2]**2+h[3]**2+2*h[1]*h0,
     'P5':2*(h[1]**2*h[5]-h[2]**2*h[4]-h[1]*h[2]*h[3])-h0*(h[3]**2+4*h[4]*h[5]),
     'I8':h[1]*h[2]+h[3]*h0,
     'I14A2':h[2]*h[3],'I14B2':h[2]**2+2*h[3]*h0,
     'I16':(2*h[2]**3+6*h[2]*h[4]*h0+3*h[5]*h0**2)/(3*h0**2*(h[2]**2+2*h[4]*h0)**sp.Rational(3,2)),
    }[name]
closed={
 'P1':(2,sp.Rational(1,2)*((X[0]-X[1])**2+(Y[0]-Y[1])**2)),
 'P2':(2,((X[0]-X[1])**2+(Y[0]+Y[1])**2)/(Y[0]*Y[1])),
 'P3':(2,-((X[0]-X[1])**2+(Y[0]-Y[1])**2)/((1+X[0]**2+Y[0]**2)*(1+X[1]**2+Y[1]**2))),
 'P5':(3,(X[0]*(Y[1]-Y[2])+X[1]*(Y[2]-Y[0])+X[2]*(Y[0]-Y[1]))**2),
 'I4':(2,-(X[1]-Y[0])*(X[0]-Y[1])/((X[0]-Y[0])*(X[1]-Y[1]))),
 'I5':(2,(X[0]-X[1])**2/(2*Y[0]*Y[1])**2),
 'I8':(2,(X[0]-X[1])*(Y[0]-Y[1])),
 'I14A2':(2,-2*(1+sp.cosh(X[0]-X[1]))),
 'I14B2':(2,-(X[0]-X[1])**2),
 'I16':(3,(X[0]+X[1]-2*X[2])*(X[0]+X[2]-2*X[1])*(X[1]+X[2]-2*X[0])/(54*sp.sqrt(2)*(X[0]*X[1]+X[0]*X[2]+X[1]*X[2]-X[0]**2-X[1]**2-X[2]**2)**sp.Rational(3,2))),
}
random.seed(1)
for name,h in H.items():
    F1 = sp.simplify(C(name,h,1)) if name!='I16' else 'indet'
    k,cf=closed[name]
    hs=[sum(hh.subs({x:X[i],y:Y[i]}) for i in range(k)) for hh in h]
    Fk=C(name,hs,k)
    F2=None
    if k==3:
        hs2=[sum(hh.subs({x:X[i],y:Y[i]}) for i in range(2)) for hh in h]
        F2=sp.simplify(C(name,hs2,2)) if name!='I16' else 'skip'
    errs=[]
    for _ in range(6):
        sub={}
        for i in range(k):
            sub[X[i]]=random.uniform(-2,2); sub[Y[i]]=random.uniform(0.3,2) if name in('P2','I5') else random.uniform(-2,2)
        if name=='I4':
            for i in range(k): sub[Y[i]]=sub[X[i]]+random.choice([-1,1])*random.uniform(0.3,2)
        a=complex(Fk.subs(sub).evalf()); b=complex(cf.subs(sub).evalf())
        errs.append((a,b))
    print(name,'F1=',F1,'F2(k=3 case)=',F2, 'coproduct vs closed:', [(round(a.real,6),round(a.imag,6),round(b.real,6),round(b.imag,6)) for a,b in errs[:3]])
